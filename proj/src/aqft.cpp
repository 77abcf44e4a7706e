#include "aqftop/aqft.hpp"

#include <array>
#include <deque>

namespace aqftop {

std::size_t AqftOperad::point_index(std::uint32_t slot, const AqftPoint& p) const {
  const Slot& sl = operad.seq.slot(slot);
  std::size_t fidx = 0;
  std::size_t count = 1;
  for (std::size_t i = 0; i < sl.arity(); ++i) {
    const std::size_t radix = cat.hom(sl.profile[i], sl.target).size();
    fidx = fidx * radix + position_in_hom[p.f[i]];
    count *= radix;
  }
  return perm_rank(p.sigma) * count + fidx;
}

std::uint32_t AqftOperad::class_of(std::uint32_t slot, const AqftPoint& p) const {
  return point_class[slot][point_index(slot, p)];
}

std::string AqftOperad::class_str(ElemRef e) const {
  return operad.seq.slot_str(e.slot) + ":" + operad.seq.slot(e.slot).labels[e.elem];
}

namespace {

std::string point_str(const OrthCategory& cat, const AqftPoint& p) {
  std::string s = "[" + p.sigma.str() + ",(";
  for (std::size_t i = 0; i < p.f.size(); ++i) {
    if (i) s += ",";
    s += cat.morphism_name(p.f[i]);
  }
  return s + ")]";
}

}  // namespace

AqftOperad build_aqft_operad(const OrthCategory& cat, std::size_t max_arity) {
  if (max_arity > GammaKey::kMaxInputs) {
    throw ResourceLimit("build_aqft_operad: arity " + std::to_string(max_arity) +
                        " exceeds the supported maximum " + std::to_string(GammaKey::kMaxInputs));
  }
  AqftOperad out;
  out.cat = cat;
  out.max_arity = max_arity;
  out.position_in_hom.assign(cat.morphism_count(), 0);
  for (ObjId x = 0; x < cat.object_count(); ++x) {
    for (ObjId y = 0; y < cat.object_count(); ++y) {
      const auto& h = cat.hom(x, y);
      for (std::size_t k = 0; k < h.size(); ++k) out.position_in_hom[h[k]] = static_cast<std::uint32_t>(k);
    }
  }
  std::vector<std::string> colors;
  for (ObjId x = 0; x < cat.object_count(); ++x) colors.push_back(cat.object_name(x));
  ComponentOperad& op = out.operad;
  op.name = "O(" + cat.name() + ")";
  op.seq = SymSeqSet(colors);

  for (std::size_t n = 0; n <= max_arity; ++n) {
    const auto& perms = all_perms(n);
    const PermGroup& group = perm_group(n);
    std::vector<std::size_t> adjacent_rank;
    for (std::size_t i = 0; i + 1 < n; ++i) adjacent_rank.push_back(perm_rank(Perm::adjacent(n, i)));
    for (const Profile& c : all_profiles(cat.object_count(), n)) {
      for (ObjId t = 0; t < cat.object_count(); ++t) {
        const auto tuples = hom_tuple(cat, c, t);
        if (tuples.empty()) continue;
        const std::size_t points = perms.size() * tuples.size();
        std::vector<std::uint32_t> cls(points, static_cast<std::uint32_t>(-1));
        std::vector<AqftClass> found;
        // Points are visited in (sigma, f) lexicographic order, so every
        // orbit is first reached at its least member.
        for (std::size_t start = 0; start < points; ++start) {
          if (cls[start] != static_cast<std::uint32_t>(-1)) continue;
          const auto id = static_cast<std::uint32_t>(found.size());
          AqftClass k;
          std::deque<std::size_t> queue{start};
          cls[start] = id;
          while (!queue.empty()) {
            const std::size_t pt = queue.front();
            queue.pop_front();
            const std::size_t sr = pt / tuples.size();
            const std::size_t fi = pt % tuples.size();
            const auto& f = tuples[fi];
            k.orbit.push_back({perms[sr], f});
            const Perm inv = perms[sr].inverse();
            for (std::size_t i = 0; i + 1 < n; ++i) {
              if (!cat.is_orth(f[inv(i)], f[inv(i + 1)])) continue;
              const std::size_t next = group.compose(adjacent_rank[i], sr) * tuples.size() + fi;
              if (cls[next] == static_cast<std::uint32_t>(-1)) {
                cls[next] = id;
                queue.push_back(next);
              }
            }
          }
          std::sort(k.orbit.begin(), k.orbit.end());
          k.representative = k.orbit.front();
          found.push_back(std::move(k));
        }
        std::vector<std::string> labels;
        for (const auto& k : found) labels.push_back(point_str(cat, k.representative));
        op.seq.add_slot(c, t, std::move(labels));
        out.classes.push_back(std::move(found));
        out.point_class.push_back(std::move(cls));
      }
    }
  }

  op.seq.define_action([&](std::uint32_t s, std::uint32_t e, const Perm& p) {
    const Slot& sl = op.seq.slot(s);
    const AqftPoint& rep = out.classes[s][e].representative;
    const AqftPoint moved{compose(rep.sigma, p), act_right(rep.f, p)};
    const std::uint32_t dst = *op.seq.find(act_right(sl.profile, p), sl.target);
    return ElemRef{dst, out.class_of(dst, moved)};
  });

  for (ObjId t = 0; max_arity > 0 && t < cat.object_count(); ++t) {
    const std::uint32_t s = *op.seq.find({t}, t);
    op.units.push_back({s, out.class_of(s, {Perm::identity(1), {cat.identity(t)}})});
  }

  // Flat copies of the representatives for the composition hot loop.
  constexpr std::size_t kMax = GammaKey::kMaxInputs;
  struct FlatRep {
    std::array<std::uint8_t, kMax> sigma{}, inverse{};
    std::array<MorId, kMax> f{};
    std::uint8_t arity = 0;
  };
  std::vector<FlatRep> flat(op.seq.element_count());
  for (std::uint32_t s = 0; s < op.seq.slot_count(); ++s) {
    for (std::uint32_t e = 0; e < op.seq.slot(s).size(); ++e) {
      const AqftPoint& rep = out.classes[s][e].representative;
      FlatRep& r = flat[op.gid({s, e})];
      r.arity = static_cast<std::uint8_t>(rep.f.size());
      for (std::size_t i = 0; i < rep.f.size(); ++i) {
        r.sigma[i] = static_cast<std::uint8_t>(rep.sigma(i));
        r.inverse[rep.sigma(i)] = static_cast<std::uint8_t>(i);
        r.f[i] = rep.f[i];
      }
    }
  }
  const std::size_t ncolors = cat.object_count();
  std::vector<std::size_t> code_offset(max_arity + 2, 0);
  for (std::size_t n = 0, block = 1; n <= max_arity; ++n, block *= ncolors) code_offset[n + 1] = code_offset[n] + block;
  auto profile_code = [&](const ObjId* c, std::size_t n) {
    std::size_t code = 0;
    for (std::size_t i = 0; i < n; ++i) code = code * ncolors + c[i];
    return code_offset[n] + code;
  };
  std::vector<std::uint32_t> slot_at(code_offset[max_arity + 1] * ncolors, static_cast<std::uint32_t>(-1));
  std::vector<std::size_t> hom_count(op.seq.slot_count(), 1);
  for (std::uint32_t s = 0; s < op.seq.slot_count(); ++s) {
    const Slot& sl = op.seq.slot(s);
    slot_at[profile_code(sl.profile.data(), sl.arity()) * ncolors + sl.target] = s;
    for (ObjId c : sl.profile) hom_count[s] *= cat.hom(c, sl.target).size();
  }

  fill_gamma(op, max_arity, [&](ElemRef o, std::span<const ElemRef> inputs) {
    const FlatRep& outer = flat[op.gid(o)];
    const std::size_t m = inputs.size();
    const ObjId t = op.seq.slot(o.slot).target;
    std::array<const FlatRep*, kMax> in{};
    std::array<std::size_t, kMax + 1> start{};
    for (std::size_t j = 0; j < m; ++j) in[j] = &flat[op.gid(inputs[j])];
    // Blocks of the block permutation have the lengths of the inputs in sigma^-1 order.
    for (std::size_t j = 0; j < m; ++j) start[j + 1] = start[j] + in[outer.inverse[j]]->arity;
    std::array<std::uint32_t, kMax> block{}, sigma{};
    std::array<MorId, kMax> f{};
    std::array<ObjId, kMax> profile{};
    std::size_t n = 0;
    for (std::size_t j = 0; j < m; ++j) {
      const std::size_t src = outer.sigma[j];
      for (std::size_t k = start[src]; k < start[src + 1]; ++k) block[n++] = static_cast<std::uint32_t>(k);
    }
    std::size_t offset = 0;
    for (std::size_t j = 0; j < m; ++j) {
      const FlatRep& r = *in[j];
      const Profile& b = op.seq.slot(inputs[j].slot).profile;
      for (std::size_t i = 0; i < r.arity; ++i) {
        sigma[offset + i] = block[offset + r.sigma[i]];
        f[offset + i] = cat.compose(outer.f[j], r.f[i]);
        profile[offset + i] = b[i];
      }
      offset += r.arity;
    }
    const std::uint32_t dst = slot_at[profile_code(profile.data(), n) * ncolors + t];
    std::size_t rank = 0;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t smaller = 0;
      for (std::size_t k = i + 1; k < n; ++k) smaller += sigma[k] < sigma[i];
      rank = rank * (n - i) + smaller;
    }
    std::size_t fidx = 0;
    for (std::size_t i = 0; i < n; ++i) {
      fidx = fidx * cat.hom(profile[i], t).size() + out.position_in_hom[f[i]];
    }
    return ElemRef{dst, out.point_class[dst][rank * hom_count[dst] + fidx]};
  });
  return out;
}

AqftOperad attach_star(const AqftOperad& op, StarVariant variant) {
  AqftOperad out = op;
  const SymSeqSet& seq = op.operad.seq;
  std::vector<std::uint32_t> star(seq.element_count());
  for (std::uint32_t s = 0; s < seq.slot_count(); ++s) {
    for (std::uint32_t e = 0; e < seq.slot(s).size(); ++e) {
      const ElemRef x{s, e};
      std::uint32_t image = e;
      if (variant == StarVariant::Reverse) {
        const AqftPoint& rep = op.classes[s][e].representative;
        image = op.class_of(s, {compose(order_reversal(rep.sigma.degree()), rep.sigma), rep.f});
      }
      star[op.operad.gid(x)] = op.operad.gid({s, image});
    }
  }
  out.operad.star = std::move(star);
  out.operad.name += variant == StarVariant::Reverse ? " with reversal star" : " with identity star";
  return out;
}

Report check_perp_commutativity(const FunctorToMon& f, const OrthCategory& cat) {
  Report rep("perp-commutativity");
  for (auto [g, h] : cat.orth_pairs()) {
    const Monoid& t = f.objects.at(cat.target(g));
    const LinMap& fg = f.morphisms.at(g);
    const LinMap& fh = f.morphisms.at(h);
    for (std::size_t i = 0; i < fg.cols(); ++i) {
      for (std::size_t j = 0; j < fh.cols(); ++j) {
        const Vec a = fg.column(i);
        const Vec b = fh.column(j);
        const Vec ab = t.multiply(a, b);
        const Vec ba = t.multiply(b, a);
        rep.expect("commute", ab == ba, [&] {
          return "(" + cat.morphism_name(g) + ", " + cat.morphism_name(h) + ") on " +
                 f.objects[cat.source(g)].basis[i] + ", " + f.objects[cat.source(h)].basis[j] +
                 ": products " + vec_str(ab) + " and " + vec_str(ba);
        });
      }
    }
  }
  return rep;
}

namespace {

/// Table of the point (sigma, f) on all basis tuples of its profile.
std::vector<Vec> point_table(const FunctorToMon& fun, const Profile& c, ObjId t,
                             const AqftPoint& p) {
  const Monoid& target = fun.objects[t];
  std::size_t total = 1;
  for (ObjId x : c) total *= fun.objects[x].dim();
  const Perm inv = p.sigma.inverse();
  std::vector<Vec> table(total);
  std::vector<std::size_t> digits(c.size());
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    for (std::size_t i = c.size(); i-- > 0;) {
      digits[i] = rest % fun.objects[c[i]].dim();
      rest /= fun.objects[c[i]].dim();
    }
    Vec acc = target.unit;
    for (std::size_t q = 0; q < c.size(); ++q) {
      const std::size_t i = inv(q);
      acc = target.multiply(acc, fun.morphisms[p.f[i]].column(digits[i]));
    }
    table[idx] = std::move(acc);
  }
  return table;
}

}  // namespace

AlgebraPresentation algebra_from_functor(const FunctorToMon& fun, const AqftOperad& op) {
  const SymSeqSet& seq = op.operad.seq;
  AlgebraPresentation a;
  a.mode = fun.objects.at(0).mode;
  bool stars = true;
  for (const auto& m : fun.objects) {
    a.basis.push_back(m.basis);
    stars = stars && m.involution().has_value();
  }
  if (stars && a.mode == CarrierMode::Vec) {
    a.star.emplace();
    for (const auto& m : fun.objects) a.star->push_back(*m.star);
  }
  a.structure.resize(seq.element_count());
  for (std::uint32_t s = 0; s < seq.slot_count(); ++s) {
    const Slot& sl = seq.slot(s);
    for (std::uint32_t e = 0; e < sl.size(); ++e) {
      const AqftClass& k = op.classes[s][e];
      auto table = point_table(fun, sl.profile, sl.target, k.representative);
      for (const auto& member : k.orbit) {
        if (point_table(fun, sl.profile, sl.target, member) != table) {
          std::string orbit;
          for (const auto& p : k.orbit) orbit += " " + point_str(op.cat, p);
          throw ValidationError("structure map not well defined on class " +
                                point_str(op.cat, k.representative) + ": member " +
                                point_str(op.cat, member) + " acts differently; orbit" + orbit);
        }
      }
      a.structure[op.operad.gid({s, e})] = std::move(table);
    }
  }
  return a;
}

FunctorToMon functor_from_algebra(const AlgebraPresentation& a, const AqftOperad& op) {
  const OrthCategory& cat = op.cat;
  const SymSeqSet& seq = op.operad.seq;
  if (op.max_arity < 2) throw ArgumentError("functor_from_algebra: needs operations of arity 2");
  auto table = [&](const Profile& c, ObjId t, const AqftPoint& p) -> const std::vector<Vec>& {
    const std::uint32_t s = *seq.find(c, t);
    return a.structure.at(op.operad.gid({s, op.class_of(s, p)}));
  };
  FunctorToMon out;
  for (ObjId t = 0; t < cat.object_count(); ++t) {
    Monoid m;
    m.name = cat.object_name(t);
    m.mode = a.mode;
    m.basis = a.basis.at(t);
    m.products = table({t, t}, t, {Perm::identity(2), {cat.identity(t), cat.identity(t)}});
    m.unit = table({}, t, {Perm::identity(0), {}}).at(0);
    if (a.star) m.star = (*a.star)[t];
    out.objects.push_back(std::move(m));
  }
  for (MorId g = 0; g < cat.morphism_count(); ++g) {
    const auto& cols = table({cat.source(g)}, cat.target(g), {Perm::identity(1), {g}});
    const std::size_t rows = a.dim(cat.target(g));
    LinMap map(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      for (std::size_t r = 0; r < rows; ++r) map(r, j) = cols[j][r];
    }
    out.morphisms.push_back(std::move(map));
  }
  return out;
}

bool same_presentation(const FunctorToMon& a, const FunctorToMon& b) {
  if (a.objects.size() != b.objects.size() || a.morphisms != b.morphisms) return false;
  for (std::size_t i = 0; i < a.objects.size(); ++i) {
    const Monoid& x = a.objects[i];
    const Monoid& y = b.objects[i];
    if (x.mode != y.mode || x.basis != y.basis || x.products != y.products || x.unit != y.unit ||
        x.star != y.star) {
      return false;
    }
  }
  return true;
}

OperadMorphism induced_morphism(const AqftOperad& source, const AqftOperad& target,
                                const OrthFunctor& functor) {
  const OrthCategory& c = source.cat;
  const OrthCategory& d = target.cat;
  if (functor.objects.size() != c.object_count() || functor.morphisms.size() != c.morphism_count()) {
    throw ValidationError("orthogonal functor: object or morphism map is not total");
  }
  for (MorId g = 0; g < c.morphism_count(); ++g) {
    const MorId fg = functor.morphisms[g];
    if (d.source(fg) != functor.objects[c.source(g)] || d.target(fg) != functor.objects[c.target(g)]) {
      throw ValidationError("orthogonal functor: " + c.morphism_name(g) + " is sent to a morphism of the wrong type");
    }
    for (MorId h = 0; h < c.morphism_count(); ++h) {
      if (c.source(h) == c.target(g) &&
          functor.morphisms[c.compose(h, g)] != d.compose(functor.morphisms[h], fg)) {
        throw ValidationError("orthogonal functor: composition not preserved at " +
                              c.morphism_name(h) + " o " + c.morphism_name(g));
      }
    }
  }
  for (ObjId x = 0; x < c.object_count(); ++x) {
    if (functor.morphisms[c.identity(x)] != d.identity(functor.objects[x])) {
      throw ValidationError("orthogonal functor: identity of " + c.object_name(x) + " not preserved");
    }
  }
  for (auto [g, h] : c.orth_pairs()) {
    if (!d.is_orth(functor.morphisms[g], functor.morphisms[h])) {
      throw ValidationError("orthogonal functor: (" + c.morphism_name(g) + ", " + c.morphism_name(h) +
                            ") is orthogonal but its image is not");
    }
  }
  const SymSeqSet& seq = source.operad.seq;
  OperadMorphism phi;
  phi.color_map = functor.objects;
  phi.element_map.resize(seq.element_count());
  for (std::uint32_t s = 0; s < seq.slot_count(); ++s) {
    const Slot& sl = seq.slot(s);
    if (sl.arity() > target.max_arity) {
      throw ArgumentError("induced_morphism: target operad is built to a smaller arity");
    }
    Profile fc;
    for (ObjId x : sl.profile) fc.push_back(functor.objects[x]);
    const std::uint32_t ts = *target.operad.seq.find(fc, functor.objects[sl.target]);
    for (std::uint32_t e = 0; e < sl.size(); ++e) {
      const AqftPoint& rep = source.classes[s][e].representative;
      AqftPoint img{rep.sigma, {}};
      for (MorId g : rep.f) img.f.push_back(functor.morphisms[g]);
      phi.element_map[source.operad.gid({s, e})] = target.operad.gid({ts, target.class_of(ts, img)});
    }
  }
  return phi;
}

}  // namespace aqftop
