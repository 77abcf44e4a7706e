#include "aqftop/gns.hpp"

namespace aqftop {

GaussC InnerProductSpace::pair(const Vec& v, const Vec& w) const {
  const Vec gw = gram.apply(w);
  GaussC out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!v[k].is_zero() && !gw[k].is_zero()) out += v[k].conj() * gw[k];
  }
  return out;
}

LinMap Representation::of(const Vec& a) const {
  if (a.size() != action.size()) throw ArgumentError("Representation::of: dimension mismatch");
  LinMap out(action.at(0).rows(), action.at(0).cols());
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k].is_zero()) continue;
    for (std::size_t r = 0; r < out.rows(); ++r) {
      for (std::size_t c = 0; c < out.cols(); ++c) out(r, c) += a[k] * action[k](r, c);
    }
  }
  return out;
}

GaussC apply_functional(const Vec& omega, const Vec& v) {
  if (omega.size() != v.size()) throw ArgumentError("apply_functional: dimension mismatch");
  GaussC out;
  for (std::size_t k = 0; k < v.size(); ++k) out += omega[k] * v[k];
  return out;
}

Report check_state(const StatePresentation& s) {
  Report rep("state on " + s.algebra.name);
  rep.merge(check_star_monoid(s.algebra, Flavor::Reversing), "algebra-");
  if (!rep.passed()) return rep;
  const Monoid& a = s.algebra;
  if (!rep.expect("shape", s.omega.size() == a.dim(), [&] { return "functional has the wrong length"; })) {
    return rep;
  }
  const LinMap star = *a.involution();
  for (const auto& v : test_vectors(a.dim(), a.mode, !star.antilinear())) {
    const GaussC lhs = apply_functional(s.omega, star.apply(v));
    const GaussC rhs = apply_functional(s.omega, v).conj();
    rep.expect("star-compatible", lhs == rhs, [&] {
      return "omega(a*) = " + lhs.str() + " but conj(omega(a)) = " + rhs.str() + " at a = " + vec_str(v);
    });
  }
  rep.note("omega(1) = " + apply_functional(s.omega, a.unit).str());
  return rep;
}

Report check_inner_product(const InnerProductSpace& v) {
  Report rep("inner product");
  const LinMap& g = v.gram;
  if (!rep.expect("shape", g.rows() == g.cols() && !g.antilinear(),
                  [&] { return "Gram matrix is not a square linear map"; })) {
    return rep;
  }
  for (std::size_t r = 0; r < g.rows(); ++r) {
    for (std::size_t c = 0; c < g.cols(); ++c) {
      rep.expect("conjugate-symmetric", g(r, c) == g(c, r).conj(), [&] {
        return "G[" + std::to_string(r + 1) + "," + std::to_string(c + 1) + "] = " + g(r, c).str() +
               " but G[" + std::to_string(c + 1) + "," + std::to_string(r + 1) + "] = " + g(c, r).str();
      });
    }
  }
  return rep;
}

GnsResult gns_construct(const StatePresentation& s) {
  const Report ok = check_state(s);
  if (!ok.passed()) {
    for (const auto& f : ok.families()) {
      if (!f.passed) throw ValidationError("not a state: " + f.name + ": " + f.witness);
    }
  }
  const Monoid& a = s.algebra;
  const std::size_t d = a.dim();
  const LinMap star = *a.involution();
  GnsResult out;
  out.space.gram = LinMap(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    const Vec si = star.apply(basis_vector(d, i));
    for (std::size_t j = 0; j < d; ++j) {
      out.space.gram(i, j) = apply_functional(s.omega, a.multiply(si, basis_vector(d, j)));
    }
  }
  for (std::size_t k = 0; k < d; ++k) {
    LinMap l(d, d);
    for (std::size_t j = 0; j < d; ++j) {
      const Vec& col = a.products[k * d + j];
      for (std::size_t r = 0; r < d; ++r) l(r, j) = col[r];
    }
    out.rep.action.push_back(std::move(l));
  }
  return out;
}

Report check_representation(const Monoid& a, const InnerProductSpace& v, const Representation& ell) {
  Report rep("representation of " + a.name);
  const std::size_t d = a.dim();
  const std::size_t n = v.dim();
  bool shape = ell.action.size() == d;
  for (const auto& l : ell.action) shape = shape && l.rows() == n && l.cols() == n && !l.antilinear();
  if (!rep.expect("shape", shape, [&] { return "action maps do not match the algebra and the space"; })) {
    return rep;
  }
  rep.expect("module-unit", ell.of(a.unit) == LinMap::identity(n),
             [&] { return "the unit acts as " + ell.of(a.unit).str(); });
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const LinMap lhs = ell.of(a.products[i * d + j]);
      const LinMap rhs = matmul(ell.action[i], ell.action[j]);
      rep.expect("module-associativity", lhs == rhs, [&] {
        return a.basis[i] + " " + a.basis[j] + ": " + lhs.str() + " vs " + rhs.str();
      });
    }
  }
  const auto star = a.involution();
  if (!rep.expect("star-present", star.has_value(), [&] { return "algebra has no involution"; })) return rep;
  for (const auto& x : test_vectors(d, a.mode, !star->antilinear())) {
    const LinMap lx = ell.of(x);
    const LinMap lxs = ell.of(star->apply(x));
    for (std::size_t p = 0; p < n; ++p) {
      const Vec vp = basis_vector(n, p);
      for (std::size_t q = 0; q < n; ++q) {
        const Vec wq = basis_vector(n, q);
        const GaussC lhs = v.pair(vp, lx.apply(wq));
        const GaussC rhs = v.pair(lxs.apply(vp), wq);
        rep.expect("compatibility", lhs == rhs, [&] {
          return "a = " + vec_str(x) + ", v = e" + std::to_string(p + 1) + ", w = e" +
                 std::to_string(q + 1) + ": <v, a.w> = " + lhs.str() + ", <a*.v, w> = " + rhs.str();
        });
      }
    }
  }
  return rep;
}

std::vector<Vec> pullback_state(const FunctorToMon& f, const OrthCategory& cat, ObjId terminal,
                                const Vec& omega_t) {
  std::vector<Vec> out;
  for (ObjId c = 0; c < cat.object_count(); ++c) {
    const auto& h = cat.hom(c, terminal);
    if (h.size() != 1) {
      throw ValidationError("object " + cat.object_name(terminal) + " is not terminal: " +
                            std::to_string(h.size()) + " maps from " + cat.object_name(c));
    }
    const LinMap& m = f.morphisms.at(h[0]);
    Vec w(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) w[j] = apply_functional(omega_t, m.column(j));
    out.push_back(std::move(w));
  }
  return out;
}

Report check_state_family(const FunctorToMon& f, const OrthCategory& cat,
                          const std::vector<Vec>& omegas) {
  Report rep("state family");
  for (ObjId c = 0; c < cat.object_count(); ++c) {
    rep.merge(check_state({f.objects.at(c), omegas.at(c)}), cat.object_name(c) + "-");
  }
  for (MorId g = 0; g < cat.morphism_count(); ++g) {
    const LinMap& m = f.morphisms[g];
    const Vec& wt = omegas[cat.target(g)];
    const Vec& ws = omegas[cat.source(g)];
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const GaussC lhs = apply_functional(wt, m.column(j));
      rep.expect("compatible", lhs == ws[j], [&] {
        return cat.morphism_name(g) + " on basis " + std::to_string(j + 1) + ": " + lhs.str() +
               " vs " + ws[j].str();
      });
    }
  }
  return rep;
}

}  // namespace aqftop
