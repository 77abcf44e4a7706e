#include "aqftop/operad.hpp"

#include <algorithm>
#include <array>
#include <optional>

namespace aqftop {

GammaKey::GammaKey(std::uint32_t o, std::span<const std::uint32_t> inputs) {
  if (inputs.size() > kMaxInputs) throw ResourceLimit("GammaKey: too many inputs");
  ids[0] = o;
  std::copy(inputs.begin(), inputs.end(), ids.begin() + 1);
  len = static_cast<std::uint8_t>(inputs.size() + 1);
}

GammaTable::GammaTable(const SymSeqSet& seq, std::size_t max_arity) : max_arity_(max_arity) {
  if (max_arity > GammaKey::kMaxInputs) {
    throw ResourceLimit("GammaTable: arity " + std::to_string(max_arity) + " exceeds " +
                        std::to_string(GammaKey::kMaxInputs));
  }
  const std::size_t w = max_arity + 1;
  const std::size_t n = seq.element_count();
  slot_of_.resize(n);
  color_of_.resize(n);
  arity_of_.resize(n);
  for (std::uint32_t s = 0; s < seq.slot_count(); ++s) {
    const Slot& sl = seq.slot(s);
    profiles_.push_back(sl.profile);
    for (std::uint32_t e = 0; e < sl.size(); ++e) {
      const std::size_t g = seq.global_id({s, e});
      slot_of_[g] = s;
      color_of_[g] = sl.target;
      arity_of_[g] = static_cast<std::uint8_t>(std::min<std::size_t>(sl.arity(), 255));
    }
  }
  // In for_each_shape order: slots_with_target, then elements.
  std::vector<std::vector<std::uint64_t>> count(seq.color_count(), std::vector<std::uint64_t>(w, 0));
  before_.assign(n * w, 0);
  by_color_.resize(seq.color_count());
  for (Color c = 0; c < seq.color_count(); ++c) {
    for (std::uint32_t s : seq.slots_with_target(c)) {
      for (std::uint32_t e = 0; e < seq.slot(s).size(); ++e) {
        const std::size_t g = seq.global_id({s, e});
        std::copy(count[c].begin(), count[c].end(), before_.begin() + g * w);
        by_color_[c].push_back(static_cast<std::uint32_t>(g));
        if (arity_of_[g] <= max_arity) ++count[c][arity_of_[g]];
      }
    }
  }
  comp_offset_.resize(seq.slot_count());
  for (std::uint32_t s = 0; s < seq.slot_count(); ++s) {
    const Profile& c = profiles_[s];
    comp_offset_[s] = comp_.size();
    const std::size_t m = c.size();
    if (m > max_arity) continue;
    comp_.resize(comp_.size() + (m + 1) * w, 0);
    std::uint64_t* t = comp_.data() + comp_offset_[s];
    for (std::size_t b = 0; b < w; ++b) t[m * w + b] = 1;
    for (std::size_t i = m; i-- > 0;) {
      for (std::size_t b = 0; b < w; ++b) {
        std::uint64_t total = 0;
        for (std::size_t a = 0; a <= b; ++a) total += count[c[i]][a] * t[(i + 1) * w + b - a];
        t[i * w + b] = total;
      }
    }
  }
  base_.assign(n, 0);
  std::uint64_t next = 0;
  for (std::size_t g = 0; g < n; ++g) {
    base_[g] = next;
    if (profiles_[slot_of_[g]].size() <= max_arity) next += comp(slot_of_[g], 0, max_arity);
  }
  values_.assign(next, kUnset);
}

std::optional<std::size_t> GammaTable::rank(std::uint32_t o, std::span<const std::uint32_t> inputs) const {
  if (o >= slot_of_.size()) return std::nullopt;
  const std::uint32_t s = slot_of_[o];
  const Profile& c = profiles_[s];
  if (c.size() > max_arity_ || inputs.size() != c.size()) return std::nullopt;
  const std::size_t w = max_arity_ + 1;
  std::uint64_t r = base_[o];
  std::size_t b = max_arity_;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const std::uint32_t x = inputs[i];
    if (x >= slot_of_.size() || color_of_[x] != c[i] || arity_of_[x] > b) return std::nullopt;
    const std::uint64_t* pre = before_.data() + x * w;
    for (std::size_t a = 0; a <= b; ++a) {
      if (pre[a]) r += pre[a] * comp(s, i + 1, b - a);
    }
    b -= arity_of_[x];
  }
  return static_cast<std::size_t>(r);
}

std::optional<std::size_t> GammaTable::rank(const GammaKey& k) const {
  if (k.len == 0) return std::nullopt;
  return rank(k.ids[0], std::span<const std::uint32_t>(k.ids.data() + 1, k.len - 1u));
}

void GammaTable::set_at(std::size_t rank, std::uint32_t result) {
  if (values_[rank] == kUnset) ++set_;
  values_[rank] = result;
}

std::optional<std::uint32_t> GammaTable::get(const GammaKey& k) const {
  const auto r = rank(k);
  if (!r) return std::nullopt;
  return at(*r);
}

void GammaTable::set(const GammaKey& k, std::uint32_t result) {
  const auto r = rank(k);
  if (!r) throw ArgumentError("GammaTable::set: not a shape of this table");
  set_at(*r, result);
}

bool GammaTable::erase(const GammaKey& k) {
  const auto r = rank(k);
  if (!r || values_[*r] == kUnset) return false;
  values_[*r] = kUnset;
  --set_;
  return true;
}

std::vector<GammaKey> GammaTable::keys() const {
  std::vector<GammaKey> out;
  out.reserve(set_);
  std::size_t rank = 0;
  std::array<std::uint32_t, GammaKey::kMaxInputs> ids{};
  for (std::uint32_t o = 0; o < slot_of_.size(); ++o) {
    const Profile& c = profiles_[slot_of_[o]];
    if (c.size() > max_arity_) continue;
    auto rec = [&](auto&& self, std::size_t i, std::size_t b) -> void {
      if (i == c.size()) {
        if (values_[rank] != kUnset) out.emplace_back(o, std::span<const std::uint32_t>(ids.data(), i));
        ++rank;
        return;
      }
      for (std::uint32_t x : by_color_[c[i]]) {
        if (arity_of_[x] > b) continue;
        ids[i] = x;
        self(self, i + 1, b - arity_of_[x]);
      }
    };
    rec(rec, 0, max_arity_);
  }
  return out;
}

std::optional<ElemRef> ComponentOperad::compose(ElemRef o, std::span<const ElemRef> inputs) const {
  if (inputs.size() > GammaKey::kMaxInputs) return std::nullopt;
  std::array<std::uint32_t, GammaKey::kMaxInputs> ids{};
  for (std::size_t i = 0; i < inputs.size(); ++i) ids[i] = gid(inputs[i]);
  const auto r = gamma.get(gid(o), std::span<const std::uint32_t>(ids.data(), inputs.size()));
  if (!r) return std::nullopt;
  return elem(*r);
}

namespace {

Profile concatenated_profile(const SymSeqSet& seq, std::span<const ElemRef> inputs) {
  Profile out;
  for (auto in : inputs) {
    const auto& p = seq.slot(in.slot).profile;
    out.insert(out.end(), p.begin(), p.end());
  }
  return out;
}

/// f(inputs) for every choice of inputs with targets `profile` and total
/// arity <= budget.
template <class F>
void for_each_inputs(const SymSeqSet& seq, const Profile& profile, std::size_t budget, F&& f) {
  std::vector<ElemRef> inputs(profile.size());
  auto rec = [&](auto&& self, std::size_t i, std::size_t left) -> void {
    if (i == profile.size()) {
      f(std::span<const ElemRef>(inputs));
      return;
    }
    for (std::uint32_t s : seq.slots_with_target(profile[i])) {
      const Slot& sl = seq.slot(s);
      if (sl.arity() > left) break;
      for (std::uint32_t e = 0; e < sl.size(); ++e) {
        inputs[i] = ElemRef{s, e};
        self(self, i + 1, left - sl.arity());
      }
    }
  };
  rec(rec, 0, budget);
}

std::string shape_str(const SymSeqSet& seq, ElemRef o, std::span<const ElemRef> inputs) {
  std::string s = "gamma(" + seq.elem_str(o) + ";";
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    s += (i ? ", " : " ") + seq.elem_str(inputs[i]);
  }
  return s + ")";
}

class Checker {
 public:
  Checker(Report& rep, const CheckOptions& opt) : rep_(rep), opt_(opt) {}

  bool expect(const std::string& family, bool ok, const std::function<std::string()>& w) {
    const bool r = rep_.expect(family, ok, w);
    if (!r && opt_.stop_early) throw StopCheck{};
    return r;
  }

 private:
  Report& rep_;
  const CheckOptions& opt_;
};

std::string opt_str(const SymSeqSet& seq, const std::optional<ElemRef>& e) {
  return e ? seq.elem_str(*e) : std::string("<undefined>");
}

}  // namespace

ComponentOperad associative_operad(std::size_t max_arity) {
  ComponentOperad op;
  op.name = "As";
  op.seq = SymSeqSet({"*"});
  for (std::size_t n = 0; n <= max_arity; ++n) {
    std::vector<std::string> labels;
    for (const Perm& p : all_perms(n)) labels.push_back(p.str());
    op.seq.add_slot(Profile(n, 0), 0, std::move(labels));
  }
  op.seq.define_action([](std::uint32_t s, std::uint32_t e, const Perm& p) {
    const Perm& sigma = all_perms(p.degree())[e];
    return ElemRef{s, static_cast<std::uint32_t>(perm_rank(compose(sigma, p)))};
  });
  if (max_arity > 0) op.units = {ElemRef{*op.seq.find({0}, 0), 0}};
  fill_gamma(op, max_arity, [&](ElemRef o, std::span<const ElemRef> inputs) {
    const std::size_t m = inputs.size();
    const Perm& sigma = all_perms(m)[o.elem];
    const Perm inv = sigma.inverse();
    std::vector<std::size_t> lengths(m);
    std::vector<Perm> parts;
    for (std::size_t j = 0; j < m; ++j) {
      lengths[j] = op.seq.slot(inputs[inv(j)].slot).arity();
      parts.push_back(all_perms(op.seq.slot(inputs[j].slot).arity())[inputs[j].elem]);
    }
    const Perm r = compose(block_permutation(sigma, lengths), block_sum(parts));
    return ElemRef{*op.seq.find(Profile(r.degree(), 0), 0),
                   static_cast<std::uint32_t>(perm_rank(r))};
  });
  return op;
}

ComponentOperad commutative_operad(std::size_t max_arity) {
  ComponentOperad op;
  op.name = "Com";
  op.seq = SymSeqSet({"*"});
  for (std::size_t n = 0; n <= max_arity; ++n) {
    op.seq.add_slot(Profile(n, 0), 0, {"c" + std::to_string(n)});
  }
  op.seq.define_action([](std::uint32_t s, std::uint32_t, const Perm&) { return ElemRef{s, 0}; });
  if (max_arity > 0) op.units = {ElemRef{*op.seq.find({0}, 0), 0}};
  fill_gamma(op, max_arity, [&](ElemRef, std::span<const ElemRef> inputs) {
    return ElemRef{*op.seq.find(concatenated_profile(op.seq, inputs), 0), 0};
  });
  return op;
}

namespace {

/**
 * Global-id view of an operad for the exhaustive checkers: permutation
 * action by rank, orbit minima and the ranks of the transpositions that
 * the equivariance generators need.
 */
class GidView {
 public:
  explicit GidView(const ComponentOperad& op) : op_(op), gt_(op.gamma) {
    const SymSeqSet& seq = op.seq;
    const std::size_t n = seq.element_count();
    act_offset_.assign(n + 1, 0);
    for (std::uint32_t g = 0; g < n; ++g) {
      const std::size_t a = gt_.arity_of(g);
      act_offset_[g + 1] = act_offset_[g] + (a <= gt_.max_arity() ? factorial(a) : 0);
    }
    act_.resize(act_offset_[n]);
    orbit_min_.resize(n);
    for (std::uint32_t g = 0; g < n; ++g) {
      const ElemRef e = op.elem(g);
      std::uint32_t least = g;
      for (std::size_t r = 0; r < act_offset_[g + 1] - act_offset_[g]; ++r) {
        const auto h = static_cast<std::uint32_t>(seq.global_id(seq.act(e, r)));
        act_[act_offset_[g] + r] = h;
        least = std::min(least, h);
      }
      orbit_min_[g] = least;
    }
    for (std::size_t d = 0; d <= GammaKey::kMaxInputs; ++d) {
      for (std::size_t i = 0; i + 1 < d; ++i) adjacent_[d][i] = perm_rank(Perm::adjacent(d, i));
    }
    for (Color c = 0; c < seq.color_count(); ++c) {
      all_.push_back(gt_.by_color(c));
      std::vector<std::uint32_t> reps;
      for (std::uint32_t g : gt_.by_color(c)) {
        if (orbit_min_[g] == g) reps.push_back(g);
      }
      reps_.push_back(std::move(reps));
    }
  }

  std::uint32_t act(std::uint32_t g, std::size_t rank) const { return act_[act_offset_[g] + rank]; }
  bool is_orbit_min(std::uint32_t g) const { return orbit_min_[g] == g; }
  std::size_t adjacent(std::size_t degree, std::size_t i) const { return adjacent_[degree][i]; }

  /// Rank of the block permutation exchanging adjacent blocks of lengths a
  /// and b that start at position `at` in degree n.
  std::size_t block_swap(std::size_t n, std::size_t at, std::size_t a, std::size_t b) {
    const std::size_t key = ((n * 8 + at) * 8 + a) * 8 + b;
    auto& slot = swaps_[key];
    if (slot == 0) {
      std::vector<std::size_t> lengths(at, 1);
      lengths.push_back(a);
      lengths.push_back(b);
      lengths.resize(n - a - b + 2, 1);
      const Perm s = Perm::adjacent(lengths.size(), at);
      slot = perm_rank(block_permutation(s, lengths)) + 1;
    }
    return slot - 1;
  }

  const std::vector<std::uint32_t>& candidates(Color c, bool reduced) const {
    return reduced ? reps_[c] : all_[c];
  }

  std::string str(std::uint32_t g) const { return op_.seq.elem_str(op_.elem(g)); }
  std::string shape(std::uint32_t o, std::span<const std::uint32_t> xs) const {
    std::string s = "gamma(" + str(o) + ";";
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : " ") + str(xs[i]);
    return s + ")";
  }

 private:
  const ComponentOperad& op_;
  const GammaTable& gt_;
  std::vector<std::size_t> act_offset_;
  std::vector<std::uint32_t> act_;
  std::vector<std::uint32_t> orbit_min_;
  std::array<std::array<std::size_t, GammaKey::kMaxInputs>, GammaKey::kMaxInputs + 1> adjacent_{};
  std::array<std::size_t, 8 * 8 * 8 * 8> swaps_{};
  std::vector<std::vector<std::uint32_t>> all_, reps_;
};

std::string opt_gid(const GidView& v, std::uint32_t g) {
  return g == GammaTable::kUnset ? std::string("<undefined>") : v.str(g);
}

/// Both equivariance laws on the adjacent generators at one shape.
void equivariance_at(const GammaTable& gt, GidView& view, const ShapeCursor& s, Tally& outer,
                     Tally& inner) {
  std::array<std::uint32_t, ShapeCursor::kMax> moved{};
  const std::uint32_t v = gt.raw(s.rank);
  const std::size_t n = s.total;
  std::size_t at = 0;
  for (std::size_t i = 0; i < s.m; ++i) {
    const std::size_t li = gt.arity_of(s.x[i]);
    if (i + 1 < s.m) {
      const std::size_t lj = gt.arity_of(s.x[i + 1]);
      const std::size_t sigma = view.adjacent(s.m, i);
      std::copy(s.x.begin(), s.x.begin() + s.m, moved.begin());
      std::swap(moved[i], moved[i + 1]);
      const std::uint32_t o2 = view.act(s.o, sigma);
      const std::uint32_t lhs =
          gt.raw(gt.rank_of(o2, std::span<const std::uint32_t>(moved.data(), s.m)));
      const std::uint32_t rhs = view.act(v, view.block_swap(n, at, li, lj));
      outer.expect(lhs == rhs, [&] {
        return view.shape(s.o, s.inputs()) + " under " + all_perms(s.m)[sigma].str() +
               ": gamma of permuted = " + opt_gid(view, lhs) +
               ", permuted gamma = " + view.str(rhs);
      });
    }
    for (std::size_t j = 0; j + 1 < li; ++j) {
      const std::size_t tau = view.adjacent(li, j);
      const std::uint32_t xi = view.act(s.x[i], tau);
      const std::uint64_t r2 = s.rank - s.offset[i] + gt.offset(s.slot, i, xi, s.budget[i]);
      const std::uint32_t lhs = gt.raw(r2);
      const std::uint32_t rhs = view.act(v, view.adjacent(n, at + j));
      inner.expect(lhs == rhs, [&] {
        return view.shape(s.o, s.inputs()) + " with input " + std::to_string(i + 1) +
               " under " + all_perms(li)[tau].str() + ": " + opt_gid(view, lhs) + " vs " +
               view.str(rhs);
      });
    }
    at += li;
  }
}

/// The result of a shape is typed by the concatenated input profile.
bool typed_at(const GammaTable& gt, const ShapeCursor& s, std::uint32_t v) {
  if (v == GammaTable::kUnset || gt.color_of(v) != gt.color_of(s.o)) return false;
  const Profile& pv = gt.profile(gt.slot_of(v));
  return pv.size() == s.total && std::equal(pv.begin(), pv.end(), s.profile.begin());
}
}  // namespace

Report check_operad_axioms(const ComponentOperad& op, std::size_t max_arity,
                           const CheckOptions& options) {
  Report rep("operad axioms: " + op.name);
  const SymSeqSet& seq = op.seq;
  const GammaTable& gt = op.gamma;
  if (max_arity > op.gamma_arity) {
    rep.note("max_arity " + std::to_string(max_arity) + " exceeds stored composition arity " +
             std::to_string(op.gamma_arity) + "; checking up to the stored arity");
    max_arity = op.gamma_arity;
  }
  Checker ck(rep, options);
  try {
    Report action = check_action(seq, options.stop_early);
    rep.merge(action);
    if (!action.passed()) return rep;

    // Without unary operations there is nothing to be a unit.
    const bool unital = op.gamma_arity > 0;
    if (!unital) rep.note("arity 0 truncation: unit laws are vacuous");
    for (Color t = 0; unital && t < seq.color_count(); ++t) {
      const bool ok = t < op.units.size() && op.units[t].slot < seq.slot_count() &&
                      seq.slot(op.units[t].slot).profile == Profile{t} &&
                      seq.slot(op.units[t].slot).target == t &&
                      op.units[t].elem < seq.slot(op.units[t].slot).size();
      ck.expect("unit-slot", ok, [&] { return "color " + seq.colors()[t]; });
    }
    if (!rep.family_passed("unit-slot")) return rep;
    if (gt.max_arity() != op.gamma_arity) {
      rep.fail("gamma-total", "composition table does not match the stored arity");
      return rep;
    }

    GidView view(op);
    std::vector<std::uint32_t> outers(seq.element_count());
    for (std::uint32_t g = 0; g < outers.size(); ++g) outers[g] = g;
    auto all = [&](Color c) -> const std::vector<std::uint32_t>& { return view.candidates(c, false); };

    {
      Tally total(rep, "gamma-total", options.stop_early);
      walk_shapes(gt, max_arity, outers, all, [&](const ShapeCursor& s) {
        const std::uint32_t v = gt.raw(s.rank);
        total.expect(typed_at(gt, s, v), [&] { return view.shape(s.o, s.inputs()) + " = " + opt_gid(view, v); });
      });
      if (total.failed()) return rep;
    }

    for (std::uint32_t s = 0; unital && s < seq.slot_count(); ++s) {
      const Slot& sl = seq.slot(s);
      if (sl.arity() > max_arity) continue;
      for (std::uint32_t e = 0; e < sl.size(); ++e) {
        const ElemRef o{s, e};
        const ElemRef one = op.units[sl.target];
        const auto left = op.compose(one, std::span<const ElemRef>(&o, 1));
        ck.expect("unit-left", left && *left == o, [&] {
          return "gamma(1; " + seq.elem_str(o) + ") = " + opt_str(seq, left);
        });
        std::vector<ElemRef> ones;
        for (Color c : sl.profile) ones.push_back(op.units[c]);
        const auto right = op.compose(o, ones);
        ck.expect("unit-right", right && *right == o, [&] {
          return "gamma(" + seq.elem_str(o) + "; 1, ..., 1) = " + opt_str(seq, right);
        });
      }
    }

    {
      Tally outer(rep, "equivariance-outer", options.stop_early);
      Tally inner(rep, "equivariance-inner", options.stop_early);
      walk_shapes(gt, max_arity, outers, all,
                  [&](const ShapeCursor& s) { equivariance_at(gt, view, s, outer, inner); });
    }

    if (options.associativity && !rep.passed()) {
      rep.note("associativity not examined: an earlier family failed");
    } else if (options.associativity) {
      const bool reduced = options.symmetry_reduced;
      auto cands = [&](Color c) -> const std::vector<std::uint32_t>& {
        return view.candidates(c, reduced);
      };
      std::vector<std::uint32_t> outer_set;
      for (std::uint32_t g : outers) {
        if (!reduced || view.is_orbit_min(g)) outer_set.push_back(g);
      }
      if (reduced) {
        rep.note("associativity over orbit representatives: " + std::to_string(outer_set.size()) +
                 " of " + std::to_string(outers.size()) + " operations");
      }
      const std::size_t top = gt.max_arity();
      Tally assoc(rep, "associativity", options.stop_early);
      std::array<std::uint32_t, ShapeCursor::kMax> p{};
      walk_shapes(gt, max_arity, outer_set, cands, [&](const ShapeCursor& s) {
        const std::uint32_t r = gt.raw(s.rank);
        const std::uint32_t rslot = gt.slot_of(r);
        const std::uint32_t oslot = s.slot;
        const std::size_t n = s.total;
        std::array<std::size_t, ShapeCursor::kMax + 1> start{};
        for (std::size_t i = 0; i < s.m; ++i) start[i + 1] = start[i] + gt.arity_of(s.x[i]);
        // j: next position of p; i: current block; before: arity used before block i.
        auto rec = [&](auto&& self, std::size_t j, std::size_t used, std::uint64_t lrank,
                       std::size_t i, std::size_t before, std::uint64_t nrank,
                       std::uint64_t orank) -> void {
          while (i < s.m && j == start[i + 1]) {
            const std::uint32_t q = gt.raw(nrank);
            orank += gt.offset(oslot, i, q, top - before);
            before = used;
            ++i;
            if (i < s.m) nrank = gt.base(s.x[i]);
          }
          if (j == n) {
            const std::uint32_t lhs = gt.raw(lrank);
            const std::uint32_t rhs = gt.raw(orank);
            assoc.expect(lhs == rhs, [&] {
              std::string w = view.shape(s.o, s.inputs()) + " then";
              for (std::size_t k = 0; k < n; ++k) w += " " + view.str(p[k]);
              return w + ": two-stage " + opt_gid(view, lhs) + ", nested " + opt_gid(view, rhs);
            });
            return;
          }
          const std::size_t k = j - start[i];
          const std::uint32_t xslot = gt.slot_of(s.x[i]);
          for (std::uint32_t y : cands(s.profile[j])) {
            const std::size_t a = gt.arity_of(y);
            if (a > max_arity - used) break;
            p[j] = y;
            self(self, j + 1, used + a, lrank + gt.offset(rslot, j, y, top - used), i, before,
                 nrank + gt.offset(xslot, k, y, top - (used - before)), orank);
          }
        };
        rec(rec, 0, 0, gt.base(r), 0, 0, s.m ? gt.base(s.x[0]) : 0, gt.base(s.o));
      });
    }
  } catch (const StopCheck&) {
  }
  return rep;
}

MutationSweep mutation_sweep(const ComponentOperad& op, std::size_t max_arity) {
  MutationSweep out;
  max_arity = std::min(max_arity, op.gamma_arity);
  CheckOptions full;
  full.stop_early = true;
  if (!check_operad_axioms(op, max_arity, full).passed()) {
    throw ValidationError("mutation_sweep: " + op.name + " does not pass the axioms");
  }
  ComponentOperad m = op;
  const SymSeqSet& seq = op.seq;
  const std::size_t count = seq.element_count();
  // Another element of the same slot when there is one, otherwise an
  // element of a different slot.
  auto perturb = [&](std::uint32_t g) -> std::optional<std::uint32_t> {
    const ElemRef e = op.elem(g);
    const std::size_t size = seq.slot(e.slot).size();
    if (size > 1) return op.gid({e.slot, static_cast<std::uint32_t>((e.elem + 1) % size)});
    if (count > 1) return static_cast<std::uint32_t>((g + 1) % count);
    return std::nullopt;
  };
  auto record = [&](bool detected, std::string what) {
    ++out.mutants;
    if (detected) {
      ++out.detected;
    } else if (out.undetected.size() < 10) {
      out.undetected.push_back(std::move(what));
    }
  };
  auto full_check = [&] {
    ++out.full_checks;
    return !check_operad_axioms(m, max_arity, full).passed();
  };

  for (Color t = 0; t < m.units.size(); ++t) {
    const auto alt = perturb(op.gid(op.units[t]));
    if (!alt) continue;
    m.units[t] = op.elem(*alt);
    record(full_check(), "unit of " + seq.colors()[t]);
    m.units[t] = op.units[t];
  }

  for (std::uint32_t s = 0; s < seq.slot_count(); ++s) {
    const Slot& sl = seq.slot(s);
    Slot& ms = m.seq.mutable_slot(s);
    for (std::size_t r = 0; r < sl.action_slot.size(); ++r) {
      if (sl.size() > 1) {
        for (std::size_t e = 0; e < sl.size(); ++e) {
          const std::size_t at = r * sl.size() + e;
          ms.action[at] = static_cast<std::uint32_t>((sl.action[at] + 1) % sl.size());
          record(full_check(), "action of " + all_perms(sl.arity())[r].str() + " on " +
                                   seq.elem_str({s, static_cast<std::uint32_t>(e)}));
          ms.action[at] = sl.action[at];
        }
      } else if (seq.slot_count() > 1) {
        ms.action_slot[r] = static_cast<std::uint32_t>((sl.action_slot[r] + 1) % seq.slot_count());
        record(full_check(), "action slot of " + all_perms(sl.arity())[r].str() + " on " +
                                 seq.slot_str(s));
        ms.action_slot[r] = sl.action_slot[r];
      }
    }
  }

  const GammaTable& gt = op.gamma;
  GidView view(op);
  std::vector<std::uint32_t> outers(count);
  for (std::uint32_t g = 0; g < count; ++g) outers[g] = g;
  auto all = [&](Color c) -> const std::vector<std::uint32_t>& { return gt.by_color(c); };
  std::vector<std::uint32_t> unit_gid;
  for (ElemRef u : op.units) unit_gid.push_back(op.gid(u));
  walk_shapes(gt, max_arity, outers, all, [&](const ShapeCursor& s) {
    const std::uint32_t v = gt.raw(s.rank);
    const auto alt = perturb(v);
    if (!alt) return;
    m.gamma.set_at(s.rank, *alt);
    // The instances that read this entry, short of associativity.
    bool detected = !typed_at(m.gamma, s, *alt);
    if (!detected) {
      Report local;
      Tally outer(local, "outer", false), inner(local, "inner", false);
      equivariance_at(m.gamma, view, s, outer, inner);
      detected = outer.failed() || inner.failed();
    }
    if (!detected && s.m == 1 && s.o == unit_gid[gt.color_of(s.o)]) detected = *alt != s.x[0];
    if (!detected) {
      bool all_units = true;
      for (std::size_t i = 0; i < s.m; ++i) all_units = all_units && s.x[i] == unit_gid[s.profile[i]];
      if (all_units) detected = *alt != s.o;
    }
    if (!detected) detected = full_check();
    record(detected, view.shape(s.o, s.inputs()) + " = " + view.str(*alt));
    m.gamma.set_at(s.rank, v);
  });
  return out;
}

PositivePart positive_part(const ComponentOperad& op) {
  PositivePart out;
  out.seq = SymSeqSet(op.seq.colors());
  std::vector<std::int64_t> to_part(op.seq.slot_count(), -1);
  for (std::uint32_t s = 0; s < op.seq.slot_count(); ++s) {
    const Slot& sl = op.seq.slot(s);
    if (sl.arity() == 0) continue;
    to_part[s] = out.seq.add_slot(sl.profile, sl.target, sl.labels);
    out.slot_in_op.push_back(s);
  }
  out.seq.define_action([&](std::uint32_t s, std::uint32_t e, const Perm& p) {
    const ElemRef img = op.seq.act(ElemRef{out.slot_in_op[s], e}, p);
    return ElemRef{static_cast<std::uint32_t>(to_part[img.slot]), img.elem};
  });
  return out;
}

Report check_monoid_formulation(const ComponentOperad& op, std::size_t max_arity) {
  Report rep("monoid formulation: " + op.name);
  rep.note("coend computed on the positive-arity part; nullary operations make O o O infinite");
  if (max_arity > op.gamma_arity) max_arity = op.gamma_arity;
  const PositivePart part = positive_part(op);
  const SymSeqSet& p = part.seq;
  auto in_op = [&](std::uint32_t pslot, std::uint32_t e) {
    return ElemRef{part.slot_in_op[pslot], e};
  };
  auto slot_of = [&](const SymSeqSet& seq, const Profile& c, Color t) { return *seq.find(c, t); };

  const CoendResult oo = circle_product(p, p, max_arity);
  // gamma-bar on a raw tuple of P o P, as an element of O.
  auto induced = [&](const CoendTuple& t) -> std::optional<ElemRef> {
    const ElemRef o = in_op(slot_of(p, t.a, t.target), t.x);
    std::vector<ElemRef> in;
    for (std::size_t i = 0; i < t.a.size(); ++i) in.push_back(in_op(slot_of(p, t.b[i], t.a[i]), t.y[i]));
    const auto r = op.compose(o, in);
    if (!r) return std::nullopt;
    return op.seq.act(*r, t.kappa);
  };

  std::vector<std::optional<ElemRef>> class_value;
  std::vector<std::size_t> class_offset(oo.seq.slot_count() + 1, 0);
  for (std::uint32_t s = 0; s < oo.seq.slot_count(); ++s) {
    class_offset[s + 1] = class_offset[s] + oo.seq.slot(s).size();
  }
  class_value.resize(class_offset.back());
  for (std::uint32_t s = 0; s < oo.seq.slot_count(); ++s) {
    const Slot& sl = oo.seq.slot(s);
    for (std::uint32_t e = 0; e < sl.size(); ++e) {
      const ElemRef cls{s, e};
      const auto value = induced(oo.representative(cls));
      class_value[class_offset[s] + e] = value;
      for (auto r : oo.members[s][e]) {
        const auto other = induced(oo.raw[r]);
        rep.expect("induced-gamma-well-defined", value && other == value, [&] {
          return oo.seq.elem_str(cls) + ": " + opt_str(op.seq, value) + " vs " + opt_str(op.seq, other);
        });
      }
      if (!value) continue;
      const auto& perms = all_perms(sl.arity());
      for (std::size_t r = 0; r < perms.size(); ++r) {
        const ElemRef moved = oo.seq.act(cls, r);
        const auto lhs = induced(oo.representative(moved));
        rep.expect("induced-gamma-equivariant", lhs && *lhs == op.seq.act(*value, r), [&] {
          return oo.seq.elem_str(cls) + " under " + perms[r].str();
        });
      }
    }
  }
  rep.note("|(P o P)| slots: " + std::to_string(oo.seq.slot_count()) + ", classes: " +
           std::to_string(oo.seq.element_count()));

  const SymSeqSet unit = circle_unit(op.seq.colors());
  const CoendResult ip = circle_product(unit, p, max_arity);
  for (const CoendTuple& t : ip.raw) {
    const ElemRef y = in_op(slot_of(p, t.b[0], t.a[0]), t.y[0]);
    const auto r = op.compose(op.units[t.target], std::span<const ElemRef>(&y, 1));
    const ElemRef unitor = op.seq.act(y, t.kappa);
    rep.expect("unit-left-diagram", r && op.seq.act(*r, t.kappa) == unitor,
               [&] { return "1 o " + op.seq.elem_str(y) + " with " + t.kappa.str(); });
  }
  const CoendResult pi = circle_product(p, unit, max_arity);
  for (const CoendTuple& t : pi.raw) {
    const ElemRef x = in_op(slot_of(p, t.a, t.target), t.x);
    std::vector<ElemRef> ones;
    for (Color c : t.a) ones.push_back(op.units[c]);
    const auto r = op.compose(x, ones);
    rep.expect("unit-right-diagram", r && op.seq.act(*r, t.kappa) == op.seq.act(x, t.kappa),
               [&] { return op.seq.elem_str(x) + " o 1 with " + t.kappa.str(); });
  }
  for (std::uint32_t s = 0; s < p.slot_count(); ++s) {
    const Slot& sl = p.slot(s);
    if (sl.arity() > max_arity) continue;
    const auto a = ip.seq.find(sl.profile, sl.target);
    const auto b = pi.seq.find(sl.profile, sl.target);
    rep.expect("unitors-bijective",
               a && b && ip.seq.slot(*a).size() == sl.size() && pi.seq.slot(*b).size() == sl.size(),
               [&] { return "slot " + p.slot_str(s); });
  }

  const CoendResult ooo = circle_product(oo.seq, p, max_arity);
  for (const CoendTuple& w2 : ooo.raw) {
    const std::uint32_t xs = slot_of(oo.seq, w2.a, w2.target);
    const auto v = class_value[class_offset[xs] + w2.x];
    std::vector<ElemRef> ys;
    for (std::size_t j = 0; j < w2.a.size(); ++j) ys.push_back(in_op(slot_of(p, w2.b[j], w2.a[j]), w2.y[j]));
    std::optional<ElemRef> path1;
    if (v) {
      if (auto r = op.compose(*v, ys)) path1 = op.seq.act(*r, w2.kappa);
    }
    const CoendTuple& w = oo.representative(ElemRef{xs, w2.x});
    const Perm kinv = w.kappa.inverse();
    std::vector<ElemRef> zs;
    std::size_t offset = 0;
    bool defined = true;
    for (std::size_t i = 0; i < w.a.size() && defined; ++i) {
      const ElemRef oi = in_op(slot_of(p, w.b[i], w.a[i]), w.y[i]);
      std::vector<ElemRef> block;
      for (std::size_t k = 0; k < w.b[i].size(); ++k) block.push_back(ys[kinv(offset + k)]);
      offset += w.b[i].size();
      const auto z = op.compose(oi, block);
      if (!z) defined = false;
      else zs.push_back(*z);
    }
    std::optional<ElemRef> path2;
    if (defined) {
      if (auto r = op.compose(in_op(slot_of(p, w.a, w.target), w.x), zs)) {
        std::vector<std::size_t> lengths;
        for (const auto& bj : w2.b) lengths.push_back(bj.size());
        const Perm beta = block_permutation(kinv, lengths);
        path2 = op.seq.act(*r, compose(beta.inverse(), w2.kappa));
      }
    }
    rep.expect("associativity-diagram", path1 && path2 && *path1 == *path2, [&] {
      return "class " + oo.seq.elem_str({xs, w2.x}) + " with kappa " + w2.kappa.str() + ": " +
             opt_str(op.seq, path1) + " vs " + opt_str(op.seq, path2);
    });
  }
  rep.note("|(P o P) o P| raw tuples: " + std::to_string(ooo.raw.size()));
  return rep;
}

namespace {

std::size_t tuple_count(const AlgebraPresentation& a, const Profile& c) {
  std::size_t n = 1;
  for (Color x : c) n *= a.dim(x);
  return n;
}

/// Mixed-radix digits of a basis tuple index.
void decode_tuple(const AlgebraPresentation& a, const Profile& c, std::size_t idx,
                  std::vector<std::size_t>& digits) {
  digits.assign(c.size(), 0);
  for (std::size_t i = c.size(); i-- > 0;) {
    digits[i] = idx % a.dim(c[i]);
    idx /= a.dim(c[i]);
  }
}

std::size_t encode_tuple(const AlgebraPresentation& a, const Profile& c,
                         std::span<const std::size_t> digits) {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < c.size(); ++i) idx = idx * a.dim(c[i]) + digits[i];
  return idx;
}

std::string tuple_str(const AlgebraPresentation& a, const Profile& c,
                      std::span<const std::size_t> digits) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ", ";
    s += a.basis[c[i]][digits[i]];
  }
  return s + ")";
}

}  // namespace

namespace {
/// Multilinear extension of a structure table to the given arguments.
Vec evaluate_at(const std::vector<Vec>& table, std::size_t dim, std::span<const Vec* const> args) {
  Vec out(dim);
  auto rec = [&](auto&& self, std::size_t i, std::size_t idx, const GaussC& coef) -> void {
    if (i == args.size()) {
      axpy(out, coef, table[idx]);
      return;
    }
    const Vec& v = *args[i];
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (v[j].is_zero()) continue;
      self(self, i + 1, idx * v.size() + j, v[j] == GaussC(1) ? coef : coef * v[j]);
    }
  };
  rec(rec, 0, 0, GaussC(1));
  return out;
}
}  // namespace

Vec evaluate(const ComponentOperad& op, const AlgebraPresentation& a, ElemRef o,
             std::span<const Vec> args) {
  const Slot& sl = op.seq.slot(o.slot);
  const auto& table = a.structure.at(op.gid(o));
  if (args.size() != sl.arity()) throw ArgumentError("evaluate: wrong number of arguments");
  Vec out(a.dim(sl.target));
  auto rec = [&](auto&& self, std::size_t i, std::size_t idx, const GaussC& coef) -> void {
    if (i == args.size()) {
      axpy(out, coef, table.at(idx));
      return;
    }
    const Vec& v = args[i];
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (v[j].is_zero()) continue;
      self(self, i + 1, idx * v.size() + j, coef * v[j]);
    }
  };
  rec(rec, 0, 0, GaussC(1));
  return out;
}

Report check_algebra(const ComponentOperad& op, const AlgebraPresentation& a,
                     std::size_t max_arity, const CheckOptions& options) {
  Report rep("algebra over " + op.name);
  const SymSeqSet& seq = op.seq;
  if (max_arity > op.gamma_arity) max_arity = op.gamma_arity;
  Checker ck(rep, options);
  try {
    ck.expect("carrier", a.basis.size() == seq.color_count(),
              [&] { return "carrier count differs from color count"; });
    ck.expect("carrier", a.structure.size() == seq.element_count(),
              [&] { return "structure map count differs from operation count"; });
    if (!rep.passed()) return rep;
    for (std::uint32_t s = 0; s < seq.slot_count(); ++s) {
      const Slot& sl = seq.slot(s);
      if (sl.arity() > max_arity) continue;
      for (std::uint32_t e = 0; e < sl.size(); ++e) {
        const auto& table = a.structure[op.gid({s, e})];
        bool ok = table.size() == tuple_count(a, sl.profile);
        for (const auto& v : table) {
          ok = ok && v.size() == a.dim(sl.target);
          if (ok && a.mode == CarrierMode::Set) {
            std::size_t ones = 0;
            for (const auto& z : v) {
              if (z == GaussC(1)) ++ones;
              else if (!z.is_zero()) ok = false;
            }
            ok = ok && ones == 1;
          }
        }
        ck.expect("carrier", ok, [&] { return "structure map of " + seq.elem_str({s, e}) + " has the wrong shape"; });
      }
    }
    if (a.star) {
      bool ok = a.star->size() == seq.color_count();
      for (Color t = 0; ok && t < seq.color_count(); ++t) {
        ok = (*a.star)[t].rows() == a.dim(t) && (*a.star)[t].cols() == a.dim(t);
      }
      ck.expect("carrier", ok, [&] { return "star maps do not match the carriers"; });
    }
    if (!rep.passed()) return rep;

    for (Color t = 0; t < op.units.size(); ++t) {
      const auto& table = a.structure[op.gid(op.units[t])];
      for (std::size_t j = 0; j < a.dim(t); ++j) {
        ck.expect("unit", table[j] == basis_vector(a.dim(t), j), [&] {
          return "1_" + seq.colors()[t] + " sends " + a.basis[t][j] + " to " + vec_str(table[j]);
        });
      }
    }

    std::vector<std::size_t> digits, moved;
    for (std::uint32_t s = 0; s < seq.slot_count(); ++s) {
      const Slot& sl = seq.slot(s);
      const std::size_t n = sl.arity();
      if (n > max_arity || n < 2) continue;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        const Perm tau = Perm::adjacent(n, i);
        const std::size_t rank = perm_rank(tau);
        const Profile permuted = act_right(sl.profile, tau);
        for (std::uint32_t e = 0; e < sl.size(); ++e) {
          const ElemRef o{s, e};
          const ElemRef ot = seq.act(o, rank);
          const auto& lhs_table = a.structure[op.gid(ot)];
          const auto& rhs_table = a.structure[op.gid(o)];
          for (std::size_t idx = 0; idx < rhs_table.size(); ++idx) {
            decode_tuple(a, sl.profile, idx, digits);
            moved = act_right(digits, tau);
            const Vec& lhs = lhs_table[encode_tuple(a, permuted, moved)];
            ck.expect("equivariance", lhs == rhs_table[idx], [&] {
              return seq.elem_str(o) + " on " + tuple_str(a, sl.profile, digits) + " vs " +
                     seq.elem_str(ot) + " on the permuted tuple";
            });
          }
        }
      }
    }

    // With equivariant structure maps, an instance moved by the outer or an
    // inner symmetric group is the original one on a permuted tuple.
    const bool reduced = options.symmetry_reduced && rep.family_passed("equivariance");
    std::optional<GidView> view;
    if (reduced) view.emplace(op);
    std::size_t shapes = 0, examined = 0;
    std::vector<const Vec*> args;
    for_each_shape(seq, max_arity, [&](ElemRef o, std::span<const ElemRef> in) {
      ++shapes;
      if (reduced) {
        if (!view->is_orbit_min(op.gid(o))) return;
        for (ElemRef x : in) {
          if (!view->is_orbit_min(op.gid(x))) return;
        }
      }
      ++examined;
      const ElemRef r = *op.compose(o, in);
      const Profile& c = seq.slot(r.slot).profile;
      const auto& table = a.structure[op.gid(r)];
      for (std::size_t idx = 0; idx < table.size(); ++idx) {
        decode_tuple(a, c, idx, digits);
        args.clear();
        std::size_t offset = 0;
        for (auto x : in) {
          const Profile& b = seq.slot(x.slot).profile;
          const std::size_t sub = encode_tuple(a, b, std::span<const std::size_t>(digits).subspan(offset, b.size()));
          args.push_back(&a.structure[op.gid(x)][sub]);
          offset += b.size();
        }
        const Vec rhs = evaluate_at(a.structure[op.gid(o)], a.dim(seq.slot(o.slot).target), args);
        ck.expect("associativity", table[idx] == rhs, [&] {
          return shape_str(seq, o, in) + " on " + tuple_str(a, c, digits) + ": composite gives " +
                 vec_str(table[idx]) + ", two-stage gives " + vec_str(rhs);
        });
      }
    });
    if (reduced) {
      rep.note("associativity over orbit representatives: " + std::to_string(examined) + " of " +
               std::to_string(shapes) + " shapes");
    }
  } catch (const StopCheck&) {
  }
  return rep;
}

Report check_operad_morphism(const ComponentOperad& source, const ComponentOperad& target,
                             const OperadMorphism& phi, std::size_t max_arity) {
  Report rep("operad morphism " + source.name + " -> " + target.name);
  const SymSeqSet& s = source.seq;
  const SymSeqSet& t = target.seq;
  max_arity = std::min({max_arity, source.gamma_arity, target.gamma_arity});
  if (phi.color_map.size() != s.color_count() || phi.element_map.size() != s.element_count()) {
    rep.fail("shape", "color or element map has the wrong size");
    return rep;
  }
  auto image = [&](ElemRef e) { return target.elem(phi.element_map[source.gid(e)]); };
  for (std::uint32_t sl = 0; sl < s.slot_count(); ++sl) {
    const Slot& slot = s.slot(sl);
    Profile fc;
    for (Color c : slot.profile) fc.push_back(phi.color_map[c]);
    for (std::uint32_t e = 0; e < slot.size(); ++e) {
      const ElemRef el{sl, e};
      const std::uint32_t g = phi.element_map[source.gid(el)];
      const bool typed = g < t.element_count() && t.slot(t.element(g).slot).profile == fc &&
                         t.slot(t.element(g).slot).target == phi.color_map[slot.target];
      if (!rep.expect("typing", typed, [&] { return s.elem_str(el); })) continue;
      const auto& perms = all_perms(slot.arity());
      for (std::size_t r = 0; r < perms.size(); ++r) {
        rep.expect("equivariance", image(s.act(el, r)) == t.act(image(el), r),
                   [&] { return s.elem_str(el) + " under " + perms[r].str(); });
      }
      if (source.star && target.star) {
        rep.expect("star", phi.element_map[(*source.star)[source.gid(el)]] == (*target.star)[g],
                   [&] { return s.elem_str(el); });
      }
    }
  }
  if (!rep.passed()) return rep;
  for (Color c = 0; c < s.color_count() && c < source.units.size(); ++c) {
    rep.expect("units", image(source.units[c]) == target.units[phi.color_map[c]],
               [&] { return "color " + s.colors()[c]; });
  }
  std::vector<ElemRef> mapped;
  for_each_shape(s, max_arity, [&](ElemRef o, std::span<const ElemRef> in) {
    mapped.clear();
    for (auto x : in) mapped.push_back(image(x));
    const auto lhs = source.compose(o, in);
    const auto rhs = target.compose(image(o), mapped);
    rep.expect("gamma", lhs && rhs && image(*lhs) == *rhs, [&] { return shape_str(s, o, in); });
  });
  return rep;
}

AlgebraPresentation pullback_algebra(const ComponentOperad& source,
                                     const ComponentOperad& target, const OperadMorphism& phi,
                                     const AlgebraPresentation& a, std::size_t max_arity) {
  const Report rep = check_operad_morphism(source, target, phi, max_arity);
  if (!rep.passed()) {
    for (const auto& f : rep.families()) {
      if (!f.passed) throw ValidationError("operad morphism fails " + f.name + ": " + f.witness);
    }
  }
  AlgebraPresentation out;
  out.mode = a.mode;
  for (Color c = 0; c < source.seq.color_count(); ++c) out.basis.push_back(a.basis.at(phi.color_map[c]));
  out.structure.resize(source.seq.element_count());
  for (std::size_t g = 0; g < out.structure.size(); ++g) {
    out.structure[g] = a.structure.at(phi.element_map[g]);
  }
  if (a.star) {
    out.star.emplace();
    for (Color c = 0; c < source.seq.color_count(); ++c) out.star->push_back((*a.star)[phi.color_map[c]]);
  }
  return out;
}

}  // namespace aqftop
