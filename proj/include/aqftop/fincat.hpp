#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aqftop/perm.hpp"

namespace aqftop {

using ObjId = std::uint32_t;
using MorId = std::uint32_t;

/// A finite sequence of objects; the empty profile is allowed.
using Profile = std::vector<ObjId>;

struct Morphism {
  std::string name;
  ObjId source = 0;
  ObjId target = 0;
};

/// Category description as authored, before validation. Labels, not ids.
struct CategoryData {
  struct Arrow {
    std::string name, source, target;
  };
  /// result = then o first
  struct Composite {
    std::string first, then, result;
  };

  std::string name;
  std::vector<std::string> objects;
  std::vector<Arrow> morphisms;
  std::vector<Composite> compositions;

  /// When false, identities id_X are synthesized together with their
  /// composition rows. When true, `identities` names them and the table
  /// must list their rows explicitly.
  bool explicit_identities = false;
  std::vector<std::pair<std::string, std::string>> identities;  // object, morphism

  std::vector<std::pair<std::string, std::string>> orth;
  /// Generators are closed; otherwise the list is validated as-is.
  bool orth_generators = true;
};

using OrthPairs = std::vector<std::pair<MorId, MorId>>;

/**
 * A validated finite category with an orthogonality relation. The
 * composition table is dense over composable pairs and the relation is
 * stored as an adjacency matrix, both constant-time to query.
 */
class OrthCategory {
 public:
  const std::string& name() const { return name_; }

  std::size_t object_count() const { return objects_.size(); }
  const std::string& object_name(ObjId x) const { return objects_.at(x); }
  /// Throws ArgumentError for an unknown label.
  ObjId object_index(const std::string& label) const;

  std::size_t morphism_count() const { return morphisms_.size(); }
  const Morphism& morphism(MorId f) const { return morphisms_.at(f); }
  const std::string& morphism_name(MorId f) const { return morphisms_.at(f).name; }
  MorId morphism_index(const std::string& name) const;
  ObjId source(MorId f) const { return morphisms_[f].source; }
  ObjId target(MorId f) const { return morphisms_[f].target; }

  MorId identity(ObjId x) const { return identities_.at(x); }
  bool is_identity(MorId f) const { return identities_[source(f)] == f && source(f) == target(f); }

  /// then o first; ArgumentError unless target(first) == source(then).
  MorId compose(MorId then, MorId first) const;

  /// Morphisms x -> y in id order.
  const std::vector<MorId>& hom(ObjId x, ObjId y) const {
    return homs_[x * objects_.size() + y];
  }

  bool is_orth(MorId f, MorId g) const { return orth_[f * morphisms_.size() + g]; }
  /// Ordered pairs, both orientations, sorted.
  OrthPairs orth_pairs() const;

  /// Copy with a replaced relation; throws ValidationError unless valid.
  OrthCategory with_orthogonality(const OrthPairs& pairs) const;

 private:
  friend OrthCategory build_category(const CategoryData& data);

  std::string name_;
  std::vector<std::string> objects_;
  std::vector<Morphism> morphisms_;
  std::vector<MorId> identities_;
  std::vector<MorId> table_;  // then * M + first, or kNone
  std::vector<std::vector<MorId>> homs_;
  std::vector<bool> orth_;
};

inline constexpr MorId kNoMorphism = static_cast<MorId>(-1);

/**
 * Category axioms only; the orthogonality list of `data` is ignored.
 * Throws ValidationError naming the first failing instance.
 */
OrthCategory build_category(const CategoryData& data);

/// build_category followed by the orthogonality list (closed or validated).
OrthCategory validate_category(const CategoryData& data);

/// First violation of common target, symmetry or stability, if any.
std::optional<std::string> orthogonality_violation(const OrthCategory& cat,
                                                   const OrthPairs& pairs);

/// Throws ValidationError with the witness from orthogonality_violation.
void validate_orthogonality(const OrthCategory& cat, const OrthPairs& pairs);

/// Least symmetric, composition-stable relation containing `generators`.
OrthPairs orthogonal_closure(const OrthCategory& cat, const OrthPairs& generators);

/// C(c, t): all tuples (f_1..f_n) with f_i : c_i -> t, lexicographic in ids.
std::vector<std::vector<MorId>> hom_tuple(const OrthCategory& cat,
                                          const Profile& c, ObjId t);

/// (c rho, rho) with rho the order reversal of degree |c|.
std::pair<Profile, Perm> profile_rev(const Profile& c);

/// The reversal functor on profile-groupoid morphisms: rho s rho.
Perm rev_morphism(const Perm& s);

std::string profile_str(const OrthCategory& cat, const Profile& c);

/// All profiles over `colors` objects of length n, lexicographic.
std::vector<Profile> all_profiles(std::size_t colors, std::size_t n);

}  // namespace aqftop
