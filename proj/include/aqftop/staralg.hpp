#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aqftop/cvec.hpp"
#include "aqftop/fincat.hpp"
#include "aqftop/operad.hpp"
#include "aqftop/report.hpp"

namespace aqftop {

/**
 * A finite-dimensional unital algebra by structure constants:
 * products[i * dim + j] = e_i e_j. In Set mode the basis is the underlying
 * set, every product is a basis vector and the involution is trivial.
 */
struct Monoid {
  std::string name;
  CarrierMode mode = CarrierMode::Vec;
  std::vector<std::string> basis;
  std::vector<Vec> products;
  Vec unit;
  std::optional<LinMap> star;

  std::size_t dim() const { return basis.size(); }
  Vec multiply(const Vec& a, const Vec& b) const;
  /// The involution in force: `star`, or coordinate conjugation in Set mode.
  std::optional<LinMap> involution() const;
};

enum class Flavor { Nonreversing, Reversing };

/// Either a set with a self-map or a space with a (possibly antilinear) map.
struct StarObject {
  CarrierMode mode = CarrierMode::Vec;
  LinMap star;
};

/**
 * Vectors on which an identity between maps has to be tested. A complex
 * basis suffices when every map involved is additive and has a definite
 * linearity; mixing linear and antilinear maps needs the real basis
 * {e_j, i e_j}.
 */
std::vector<Vec> test_vectors(std::size_t dim, CarrierMode mode, bool real_basis);

Report check_star_object(const StarObject& x);
Report check_monoid(const Monoid& m);
Report check_star_monoid(const Monoid& m, Flavor flavor);

/// Images of the objects and morphisms of a finite category.
struct FunctorToMon {
  std::vector<Monoid> objects;
  std::vector<LinMap> morphisms;
};

/// Typing, functoriality and monoid-morphism laws.
Report check_functor(const FunctorToMon& f, const OrthCategory& cat);
/// star_t(F(g) v) = F(g)(star_s v) for every g : s -> t.
Report check_star_functor(const FunctorToMon& f, const OrthCategory& cat);

/// Involution, action compatibility, units and gamma compatibility.
Report check_star_operad(const ComponentOperad& op, std::size_t max_arity);

/// star_A(alpha_o(a)) = conj(alpha_{o*}(conj(star_A a_1), ...)).
Report check_star_algebra(const ComponentOperad& op, const AlgebraPresentation& a,
                          std::size_t max_arity);

}  // namespace aqftop
