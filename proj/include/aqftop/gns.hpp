#pragma once

#include <vector>

#include "aqftop/cvec.hpp"
#include "aqftop/fincat.hpp"
#include "aqftop/report.hpp"
#include "aqftop/staralg.hpp"

namespace aqftop {

/// omega[j] is the value on the basis vector e_j.
struct StatePresentation {
  Monoid algebra;
  Vec omega;
};

/// <v, w> = conj(v)^T G w.
struct InnerProductSpace {
  LinMap gram;
  std::size_t dim() const { return gram.rows(); }
  GaussC pair(const Vec& v, const Vec& w) const;
};

/// action[k] is the operator of the basis element e_k.
struct Representation {
  std::vector<LinMap> action;
  LinMap of(const Vec& a) const;
};

struct GnsResult {
  InnerProductSpace space;
  Representation rep;
};

GaussC apply_functional(const Vec& omega, const Vec& v);

/// Reversing star monoid plus omega(a*) = conj(omega(a)).
Report check_state(const StatePresentation& s);
/// G equals its conjugate transpose. Positivity is never required.
Report check_inner_product(const InnerProductSpace& v);
/// Gram G_ab = omega(e_a* e_b) and left multiplication. Throws
/// ValidationError when check_state fails.
GnsResult gns_construct(const StatePresentation& s);
/// Module laws and <v, a.w> = <a*.v, w>.
Report check_representation(const Monoid& a, const InnerProductSpace& v, const Representation& ell);

/// omega_c = omega_t o F(c -> t) for the unique map into the terminal object.
std::vector<Vec> pullback_state(const FunctorToMon& f, const OrthCategory& cat, ObjId terminal,
                                const Vec& omega_t);
/// Every omega_c is a state and omega_t o F(g) = omega_s for all g : s -> t.
Report check_state_family(const FunctorToMon& f, const OrthCategory& cat,
                          const std::vector<Vec>& omegas);

}  // namespace aqftop
