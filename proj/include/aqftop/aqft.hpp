#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aqftop/fincat.hpp"
#include "aqftop/operad.hpp"
#include "aqftop/staralg.hpp"

namespace aqftop {

/// A pair (sigma, f) with f in C(c, t).
struct AqftPoint {
  Perm sigma;
  std::vector<MorId> f;
  friend auto operator<=>(const AqftPoint&, const AqftPoint&) = default;
};

/// One operation: the least point of its orbit and the whole orbit.
struct AqftClass {
  AqftPoint representative;
  std::vector<AqftPoint> orbit;
};

/**
 * The operad of an orthogonal category, truncated at max_arity. Slot
 * (c, t) holds the classes of S_|c| x C(c, t) under the moves
 * (s, f) -> (t_i s, f), allowed when f_{s^-1(i)} and f_{s^-1(i+1)} are
 * orthogonal. Classes within a slot are ordered by representative.
 */
struct AqftOperad {
  OrthCategory cat;
  ComponentOperad operad;
  std::vector<std::vector<AqftClass>> classes;  // per slot
  std::size_t max_arity = 0;

  /// Class of an arbitrary point of slot s.
  std::uint32_t class_of(std::uint32_t slot, const AqftPoint& p) const;
  std::string class_str(ElemRef e) const;

  std::vector<std::vector<std::uint32_t>> point_class;  // per slot, by point index
  std::vector<std::uint32_t> position_in_hom;          // per morphism

  std::size_t point_index(std::uint32_t slot, const AqftPoint& p) const;
};

AqftOperad build_aqft_operad(const OrthCategory& cat, std::size_t max_arity);

enum class StarVariant { Reverse, Identity };

/// [s, f] -> [rho s, f] or the identity.
AqftOperad attach_star(const AqftOperad& op, StarVariant variant);

/// The multiplications of t commute on the images of every orthogonal pair.
Report check_perp_commutativity(const FunctorToMon& f, const OrthCategory& cat);

/**
 * [s, f] acts by (a_1..a_n) -> product over p of F(f_{s^-1(p)})(a_{s^-1(p)}).
 * Throws ValidationError, naming the orbit, if two members of a class act
 * differently.
 */
AlgebraPresentation algebra_from_functor(const FunctorToMon& f, const AqftOperad& op);

/// Products from [e, (id, id)], unit from the nullary class, maps from [e, (g)].
FunctorToMon functor_from_algebra(const AlgebraPresentation& a, const AqftOperad& op);

/// Equality of everything but monoid names.
bool same_presentation(const FunctorToMon& a, const FunctorToMon& b);

/// An orthogonal functor as object and morphism maps.
struct OrthFunctor {
  std::vector<ObjId> objects;
  std::vector<MorId> morphisms;
};

/**
 * [s, f] -> [s, F f]. Throws ValidationError unless F is a functor that
 * preserves orthogonality.
 */
OperadMorphism induced_morphism(const AqftOperad& source, const AqftOperad& target,
                                const OrthFunctor& functor);

}  // namespace aqftop
