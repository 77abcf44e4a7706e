#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <absl/container/flat_hash_map.h>

#include "aqftop/fincat.hpp"
#include "aqftop/perm.hpp"
#include "aqftop/report.hpp"

namespace aqftop {

using Color = std::uint32_t;

/// An element of a symmetric sequence: slot index and position in the slot.
struct ElemRef {
  std::uint32_t slot = 0;
  std::uint32_t elem = 0;
  friend auto operator<=>(const ElemRef&, const ElemRef&) = default;
};

/**
 * Component X(t; c) of a symmetric sequence. For every permutation s of
 * degree |c| (addressed by perm_rank) the action sends element x to
 * position action[rank * size() + x] of slot action_slot[rank], which
 * holds the component X(t; c s).
 */
struct Slot {
  Profile profile;
  Color target = 0;
  std::vector<std::string> labels;
  std::vector<std::uint32_t> action_slot;
  std::vector<std::uint32_t> action;

  std::size_t size() const { return labels.size(); }
  std::size_t arity() const { return profile.size(); }
};

/**
 * A finitely supported Set-valued symmetric sequence. Only non-empty slots
 * are stored; the support must be closed under the profile action.
 */
class SymSeqSet {
 public:
  SymSeqSet() = default;
  explicit SymSeqSet(std::vector<std::string> colors) : colors_(std::move(colors)) {}

  const std::vector<std::string>& colors() const { return colors_; }
  std::size_t color_count() const { return colors_.size(); }

  std::size_t slot_count() const { return slots_.size(); }
  const Slot& slot(std::uint32_t s) const { return slots_.at(s); }
  Slot& mutable_slot(std::uint32_t s) { return slots_.at(s); }
  std::optional<std::uint32_t> find(const Profile& c, Color t) const;

  /// Adds an empty-action slot; call define_action before querying actions.
  std::uint32_t add_slot(Profile c, Color t, std::vector<std::string> labels);

  /**
   * Fills every action table from f(slot, elem, perm) -> ElemRef and
   * indexes elements. Throws ValidationError if f lands in a slot with the
   * wrong profile.
   */
  template <class F>
  void define_action(F&& f) {
    for (std::uint32_t s = 0; s < slots_.size(); ++s) {
      Slot& sl = slots_[s];
      const auto& perms = all_perms(sl.arity());
      sl.action_slot.assign(perms.size(), 0);
      sl.action.assign(perms.size() * sl.size(), 0);
      for (std::size_t r = 0; r < perms.size(); ++r) {
        for (std::uint32_t x = 0; x < sl.size(); ++x) {
          const ElemRef y = f(s, x, perms[r]);
          if (x == 0) {
            sl.action_slot[r] = y.slot;
          } else if (y.slot != sl.action_slot[r]) {
            throw ValidationError("action of one permutation spreads over several slots");
          }
          sl.action[r * sl.size() + x] = y.elem;
        }
        if (sl.size() == 0) sl.action_slot[r] = s;
      }
    }
    finalize();
  }

  /// Recomputes indices after slots or actions were edited in place.
  void finalize();

  ElemRef act(ElemRef x, std::size_t rank) const {
    const Slot& sl = slots_[x.slot];
    return {sl.action_slot[rank], sl.action[rank * sl.size() + x.elem]};
  }
  ElemRef act(ElemRef x, const Perm& s) const { return act(x, perm_rank(s)); }

  std::size_t element_count() const { return total_; }
  std::size_t global_id(ElemRef x) const { return offsets_[x.slot] + x.elem; }
  ElemRef element(std::size_t gid) const;

  /// Ordered by arity, then by slot index.
  const std::vector<std::uint32_t>& slots_with_target(Color t) const {
    return by_target_.at(t);
  }
  std::size_t max_arity() const;

  std::string elem_str(ElemRef x) const;
  std::string slot_str(std::uint32_t s) const;

  /// Slot listing with labels and the action table of each slot.
  std::string dump() const;

 private:
  std::vector<std::string> colors_;
  std::vector<Slot> slots_;
  std::map<std::pair<Profile, Color>, std::uint32_t> index_;
  std::vector<std::size_t> offsets_;
  std::vector<std::vector<std::uint32_t>> by_target_;
  std::size_t total_ = 0;
};

/// Functoriality of the action: identity and x.(s o t_i) = (x.s).t_i.
Report check_action(const SymSeqSet& x, bool stop_early = false);

/// The unit: a singleton in X(t; (t)) for every color, empty elsewhere.
SymSeqSet circle_unit(const std::vector<std::string>& colors);

/// Raw coend tuple (t, a, b, kappa, x, y) with (b_1 ... b_m) kappa = c.
struct CoendTuple {
  Color target = 0;
  Profile a;
  std::uint32_t x = 0;
  std::vector<Profile> b;
  std::vector<std::uint32_t> y;
  Perm kappa;

  std::vector<std::uint32_t> encode() const;
  Profile concatenated_b() const;
};

/**
 * X o Y restricted to output profiles of length <= max_arity. Exact for
 * those slots since X and Y are finitely supported.
 */
struct CoendResult {
  SymSeqSet seq;
  std::vector<CoendTuple> raw;
  std::vector<ElemRef> raw_class;
  /// members[slot][elem]: raw tuple ids of the class, representative first.
  std::vector<std::vector<std::vector<std::uint32_t>>> members;
  absl::flat_hash_map<std::vector<std::uint32_t>, std::uint32_t> index;

  const CoendTuple& representative(ElemRef e) const { return raw[members[e.slot][e.elem][0]]; }
  std::optional<ElemRef> classify(const CoendTuple& t) const;
};

/// Throws ArgumentError on a color mismatch.
CoendResult circle_product(const SymSeqSet& x, const SymSeqSet& y, std::size_t max_arity);

/// f*X over `source_colors`, with f given as indices into X's colors.
struct PullbackResult {
  SymSeqSet seq;
  std::vector<std::uint32_t> origin;  // source slot -> X slot (same elements)
};
PullbackResult pullback(const std::vector<Color>& f, const std::vector<std::string>& source_colors,
                        const SymSeqSet& x);

/// Raw left Kan tuple (c, t, lambda, x) with f(c) lambda = d.
struct KanTuple {
  Color target = 0;
  Profile c;
  std::uint32_t x = 0;
  Perm lambda;
  std::vector<std::uint32_t> encode() const;
};

struct KanResult {
  SymSeqSet seq;
  std::vector<KanTuple> raw;
  std::vector<ElemRef> raw_class;
  std::vector<std::vector<std::vector<std::uint32_t>>> members;
  absl::flat_hash_map<std::vector<std::uint32_t>, std::uint32_t> index;

  std::optional<ElemRef> classify(const KanTuple& t) const;
};

/// f_! X over `target_colors` by the colimit over the profile groupoid.
KanResult left_kan(const std::vector<Color>& f, const std::vector<std::string>& target_colors,
                   const SymSeqSet& x);

/**
 * Unit, counit and both triangle identities of f_! -| f*, element-wise on
 * X (over the source colors) and Y (over the target colors), including
 * well-definedness on raw tuples and equivariance of unit and counit.
 */
Report check_kan_adjunction(const std::vector<Color>& f,
                            const std::vector<std::string>& source_colors,
                            const std::vector<std::string>& target_colors,
                            const SymSeqSet& x, const SymSeqSet& y);

/**
 * The lax structure of f*: the map f*X o f*Y -> f*(X o Y) sending
 * [a, b, kappa, x, y] to [f(a), f(b), kappa, x, y] and f*_0 on units.
 * Checks both are well defined and equivariant.
 */
Report check_pullback_monoidal(const std::vector<Color>& f,
                               const std::vector<std::string>& source_colors,
                               const SymSeqSet& x, const SymSeqSet& y, std::size_t max_arity);

/// Generator of a free orbit: elements g.s in X(t; c s) for all s.
struct OrbitSpec {
  Profile profile;
  Color target = 0;
  bool free = true;  // otherwise one element per distinct profile c s
  std::string name;
};
SymSeqSet orbit_sequence(const std::vector<std::string>& colors,
                         const std::vector<OrbitSpec>& orbits);

/// Bundled color-change instances used by the CLI and the tests.
struct KanInstance {
  std::string name;
  std::vector<std::string> source_colors;
  std::vector<std::string> target_colors;
  std::vector<Color> f;
  SymSeqSet x;  // over source colors
  SymSeqSet y;  // over target colors
};
std::vector<KanInstance> bundled_kan_instances();

}  // namespace aqftop
