#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aqftop/cvec.hpp"
#include "aqftop/report.hpp"
#include "aqftop/symseq.hpp"

namespace aqftop {

/// Global element ids (o; o_1, ..., o_m) of a composition shape.
struct GammaKey {
  static constexpr std::size_t kMaxInputs = 7;
  std::array<std::uint32_t, kMaxInputs + 1> ids{};
  std::uint8_t len = 0;

  GammaKey() = default;
  GammaKey(std::uint32_t o, std::span<const std::uint32_t> inputs);

  std::uint32_t outer() const { return ids[0]; }
  std::size_t inputs() const { return len - 1u; }
  std::uint32_t input(std::size_t i) const { return ids[i + 1]; }

  friend bool operator==(const GammaKey& a, const GammaKey& b) {
    return a.len == b.len && std::equal(a.ids.begin(), a.ids.begin() + a.len, b.ids.begin());
  }
  friend bool operator<(const GammaKey& a, const GammaKey& b) {
    return std::lexicographical_compare(a.ids.begin(), a.ids.begin() + a.len, b.ids.begin(),
                                        b.ids.begin() + b.len);
  }
};

/**
 * Composition results for every shape (o; o_1, ..., o_m) of a fixed
 * symmetric sequence with m <= max_arity and total input arity <=
 * max_arity, stored densely by the rank of the shape in for_each_shape
 * order. Entries may be unset.
 */
class GammaTable {
 public:
  static constexpr std::uint32_t kUnset = 0xFFFFFFFFu;

  GammaTable() = default;
  GammaTable(const SymSeqSet& seq, std::size_t max_arity);

  std::size_t max_arity() const { return max_arity_; }
  std::size_t shape_count() const { return values_.size(); }
  /// Number of set entries.
  std::size_t size() const { return set_; }

  /// nullopt unless the ids form a well-typed shape within the bounds.
  std::optional<std::size_t> rank(std::uint32_t o, std::span<const std::uint32_t> inputs) const;
  std::optional<std::size_t> rank(const GammaKey& k) const;

  std::optional<std::uint32_t> at(std::size_t rank) const {
    const std::uint32_t v = values_[rank];
    if (v == kUnset) return std::nullopt;
    return v;
  }
  void set_at(std::size_t rank, std::uint32_t result);

  std::optional<std::uint32_t> get(std::uint32_t o, std::span<const std::uint32_t> inputs) const {
    const auto r = rank(o, inputs);
    if (!r) return std::nullopt;
    return at(*r);
  }
  std::optional<std::uint32_t> get(const GammaKey& k) const;
  /// Throws ArgumentError if the key is not a shape of the table.
  void set(const GammaKey& k, std::uint32_t result);
  bool erase(const GammaKey& k);

  /// Set keys in rank order.
  std::vector<GammaKey> keys() const;

  // Rank arithmetic for the checkers. The rank of (o; x_1, ..., x_m) is
  // base(o) + sum_i offset(slot(o), i, x_i, N - |x_1| - ... - |x_{i-1}|)
  // with N = max_arity(), for well-typed shapes only.
  std::uint64_t base(std::uint32_t o) const { return base_[o]; }
  std::uint64_t offset(std::uint32_t slot, std::size_t i, std::uint32_t x, std::size_t budget) const {
    const std::size_t w = max_arity_ + 1;
    const std::uint64_t* pre = before_.data() + x * w;
    const std::uint64_t* c = comp_.data() + comp_offset_[slot] + (i + 1) * w;
    std::uint64_t r = 0;
    for (std::size_t a = 0; a <= budget; ++a) r += pre[a] * c[budget - a];
    return r;
  }
  /// Rank of a shape known to be well typed.
  std::uint64_t rank_of(std::uint32_t o, std::span<const std::uint32_t> inputs) const {
    std::uint64_t r = base_[o];
    std::size_t b = max_arity_;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      r += offset(slot_of_[o], i, inputs[i], b);
      b -= arity_of_[inputs[i]];
    }
    return r;
  }
  std::uint32_t raw(std::uint64_t rank) const { return values_[rank]; }
  std::uint32_t slot_of(std::uint32_t g) const { return slot_of_[g]; }
  std::size_t arity_of(std::uint32_t g) const { return arity_of_[g]; }
  std::uint32_t color_of(std::uint32_t g) const { return color_of_[g]; }
  const Profile& profile(std::uint32_t slot) const { return profiles_[slot]; }
  /// Elements of color c in rank order, which is by nondecreasing arity.
  const std::vector<std::uint32_t>& by_color(Color c) const { return by_color_[c]; }

 private:
  std::size_t max_arity_ = 0;
  std::vector<std::uint32_t> slot_of_;   // per element
  std::vector<std::uint32_t> color_of_;  // target color per element
  std::vector<std::uint8_t> arity_of_;   // per element
  std::vector<std::uint64_t> base_;      // first rank of each outer element
  std::vector<std::uint64_t> before_;    // [element][a]: same-color predecessors of arity a
  std::vector<Profile> profiles_;        // per slot
  std::vector<std::size_t> comp_offset_;
  std::vector<std::uint64_t> comp_;      // per slot [i][b]: fillings of positions i.. within b
  std::vector<std::vector<std::uint32_t>> by_color_;
  std::vector<std::uint32_t> values_;
  std::size_t set_ = 0;

  std::uint64_t comp(std::uint32_t slot, std::size_t i, std::size_t b) const {
    return comp_[comp_offset_[slot] + i * (max_arity_ + 1) + b];
  }
};

/// A shape (o; x_1, ..., x_m) together with its rank decomposition.
struct ShapeCursor {
  static constexpr std::size_t kMax = GammaKey::kMaxInputs;
  std::uint32_t o = 0;
  std::uint32_t slot = 0;
  std::size_t m = 0;
  std::array<std::uint32_t, kMax> x{};
  std::array<std::size_t, kMax> budget{};  // table budget at position i
  std::array<std::uint64_t, kMax> offset{};
  std::uint64_t rank = 0;
  std::size_t total = 0;                    // total input arity
  std::array<Color, kMax> profile{};        // concatenated input profile

  std::span<const std::uint32_t> inputs() const { return {x.data(), m}; }
};

/**
 * Calls f(cursor) for every shape with m <= limit and total arity <=
 * limit, the outer operation taken from `outers` and every input from
 * candidates(color).
 */
template <class Cands, class F>
void walk_shapes(const GammaTable& gt, std::size_t limit, std::span<const std::uint32_t> outers,
                 Cands&& candidates, F&& f);

/**
 * A colored operad in component form. gamma holds every shape with
 * m <= gamma_arity outer inputs and total arity <= gamma_arity. The
 * optional star is indexed by global element id and stays in its slot.
 */
struct ComponentOperad {
  std::string name;
  SymSeqSet seq;
  std::vector<ElemRef> units;
  std::optional<std::vector<std::uint32_t>> star;
  GammaTable gamma;
  std::size_t gamma_arity = 0;

  std::uint32_t gid(ElemRef e) const { return static_cast<std::uint32_t>(seq.global_id(e)); }
  ElemRef elem(std::uint32_t g) const { return seq.element(g); }

  /// gamma lookup by element refs; nullopt when not stored.
  std::optional<ElemRef> compose(ElemRef o, std::span<const ElemRef> inputs) const;
};

/**
 * Calls f(o, inputs) for every shape with |o| = m <= max_arity and
 * total input arity <= max_arity, in canonical order.
 */
template <class F>
void for_each_shape(const SymSeqSet& seq, std::size_t max_arity, F&& f);

/// Fills gamma for all shapes from fn(o, inputs) -> ElemRef.
template <class F>
void fill_gamma(ComponentOperad& op, std::size_t max_arity, F&& fn);

/// Slot n = S_n with the regular right action, gamma by block permutations.
ComponentOperad associative_operad(std::size_t max_arity);
/// Singleton slots in every arity.
ComponentOperad commutative_operad(std::size_t max_arity);

struct CheckOptions {
  /// Throw-free early exit after the first failed instance.
  bool stop_early = false;
  bool associativity = true;
  /// Check associativity only where the outer operation and all inputs are
  /// least elements of their orbits under the symmetric group action.
  bool symmetry_reduced = true;
};

/**
 * Action functoriality, gamma totality, both unit laws, both
 * equivariance laws and associativity on every shape within max_arity.
 * Equivariance is checked on adjacent transpositions, which together with
 * action functoriality covers all permutations.
 *
 * Once both equivariance laws hold, the instances of associativity fall
 * into orbits on which they hold or fail together, so the symmetry
 * reduced run decides the same verdict. Associativity is only examined
 * after every earlier family passed.
 */
Report check_operad_axioms(const ComponentOperad& op, std::size_t max_arity,
                           const CheckOptions& options = {});

struct MutationSweep {
  std::size_t mutants = 0;
  std::size_t detected = 0;
  /// Mutants that needed the full check rather than the instances at the entry.
  std::size_t full_checks = 0;
  std::vector<std::string> undetected;  // first few
};

/**
 * Perturbs every unit, every action entry and every gamma entry within
 * max_arity, one at a time, and counts the mutants that the axioms
 * reject. A gamma mutant is first tested against the typing, equivariance
 * and unit instances that read the entry; the full check runs only when
 * those all pass. Throws ValidationError unless op itself passes.
 */
MutationSweep mutation_sweep(const ComponentOperad& op, std::size_t max_arity);

/// The suboperad of positive-arity operations, with the slot embedding.
struct PositivePart {
  SymSeqSet seq;
  std::vector<std::uint32_t> slot_in_op;
};
PositivePart positive_part(const ComponentOperad& op);

/**
 * Builds P o P and (P o P) o P with the coend engine for the positive-arity
 * part P, induces gamma on coend classes and checks that it is well
 * defined, equivariant, unital against the circle unit and associative.
 */
Report check_monoid_formulation(const ComponentOperad& op, std::size_t max_arity);

enum class CarrierMode { Set, Vec };

/**
 * Algebra data in components. structure[g] is the table of the operation
 * with global id g on basis tuples, first input most significant; in Set
 * mode every value is a basis vector. star, when present, has one map per
 * color (Set mode implies the trivial involution).
 */
struct AlgebraPresentation {
  CarrierMode mode = CarrierMode::Vec;
  std::vector<std::vector<std::string>> basis;  // per color
  std::vector<std::vector<Vec>> structure;
  std::optional<std::vector<LinMap>> star;

  std::size_t dim(Color t) const { return basis.at(t).size(); }
};

/// Multilinear evaluation of operation o on arbitrary vectors.
Vec evaluate(const ComponentOperad& op, const AlgebraPresentation& a, ElemRef o,
             std::span<const Vec> args);

/**
 * Carrier shapes, units, equivariance on adjacent transpositions and
 * associativity against gamma on every basis tuple. op must satisfy the
 * operad axioms. Once equivariance holds, associativity is examined only on
 * shapes whose operations are least in their orbits, as in
 * check_operad_axioms.
 */
Report check_algebra(const ComponentOperad& op, const AlgebraPresentation& a,
                     std::size_t max_arity, const CheckOptions& options = {});

/// Color map f and element map O -> f*P by global ids.
struct OperadMorphism {
  std::vector<Color> color_map;
  std::vector<std::uint32_t> element_map;
};

Report check_operad_morphism(const ComponentOperad& source, const ComponentOperad& target,
                             const OperadMorphism& phi, std::size_t max_arity);

/// Throws ValidationError when phi fails check_operad_morphism.
AlgebraPresentation pullback_algebra(const ComponentOperad& source,
                                     const ComponentOperad& target, const OperadMorphism& phi,
                                     const AlgebraPresentation& a, std::size_t max_arity);

// ---------------------------------------------------------------------------

template <class F>
void for_each_shape(const SymSeqSet& seq, std::size_t max_arity, F&& f) {
  std::vector<ElemRef> inputs;
  for (std::uint32_t s = 0; s < seq.slot_count(); ++s) {
    const Slot& outer = seq.slot(s);
    const std::size_t m = outer.arity();
    if (m > max_arity || m > GammaKey::kMaxInputs) continue;
    for (std::uint32_t e = 0; e < outer.size(); ++e) {
      inputs.assign(m, ElemRef{});
      auto rec = [&](auto&& self, std::size_t i, std::size_t budget) -> void {
        if (i == m) {
          f(ElemRef{s, e}, std::span<const ElemRef>(inputs));
          return;
        }
        for (std::uint32_t is : seq.slots_with_target(outer.profile[i])) {
          const Slot& in = seq.slot(is);
          if (in.arity() > budget) break;
          for (std::uint32_t ie = 0; ie < in.size(); ++ie) {
            inputs[i] = ElemRef{is, ie};
            self(self, i + 1, budget - in.arity());
          }
        }
      };
      rec(rec, 0, max_arity);
    }
  }
}

template <class F>
void fill_gamma(ComponentOperad& op, std::size_t max_arity, F&& fn) {
  op.gamma = GammaTable(op.seq, max_arity);
  std::size_t rank = 0;
  for_each_shape(op.seq, max_arity, [&](ElemRef o, std::span<const ElemRef> inputs) {
    op.gamma.set_at(rank++, op.gid(fn(o, inputs)));
  });
  op.gamma_arity = max_arity;
}

template <class Cands, class F>
void walk_shapes(const GammaTable& gt, std::size_t limit, std::span<const std::uint32_t> outers,
                 Cands&& candidates, F&& f) {
  const std::size_t n = gt.max_arity();
  ShapeCursor cur;
  for (std::uint32_t o : outers) {
    const Profile& c = gt.profile(gt.slot_of(o));
    if (c.size() > limit) continue;
    cur.o = o;
    cur.slot = gt.slot_of(o);
    cur.m = c.size();
    auto rec = [&](auto&& self, std::size_t i, std::size_t used, std::uint64_t rank) -> void {
      if (i == cur.m) {
        cur.rank = rank;
        cur.total = used;
        f(static_cast<const ShapeCursor&>(cur));
        return;
      }
      for (std::uint32_t x : candidates(c[i])) {
        const std::size_t a = gt.arity_of(x);
        if (a > limit - used) break;
        cur.x[i] = x;
        cur.budget[i] = n - used;
        cur.offset[i] = gt.offset(cur.slot, i, x, n - used);
        const Profile& px = gt.profile(gt.slot_of(x));
        std::copy(px.begin(), px.end(), cur.profile.begin() + used);
        self(self, i + 1, used + a, rank + cur.offset[i]);
      }
    };
    rec(rec, 0, 0, gt.base(o));
  }
}


}  // namespace aqftop
