#include "aqftop/symseq.hpp"

#include <algorithm>
#include <numeric>

#include <boost/pending/disjoint_sets.hpp>

namespace aqftop {

std::optional<std::uint32_t> SymSeqSet::find(const Profile& c, Color t) const {
  auto it = index_.find({c, t});
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::uint32_t SymSeqSet::add_slot(Profile c, Color t, std::vector<std::string> labels) {
  if (t >= colors_.size()) throw ArgumentError("add_slot: unknown color");
  for (Color ci : c) {
    if (ci >= colors_.size()) throw ArgumentError("add_slot: unknown color in profile");
  }
  if (labels.empty()) throw ArgumentError("add_slot: slots must be non-empty");
  const auto s = static_cast<std::uint32_t>(slots_.size());
  if (!index_.emplace(std::make_pair(c, t), s).second) {
    throw ArgumentError("add_slot: duplicate slot");
  }
  slots_.push_back(Slot{std::move(c), t, std::move(labels), {}, {}});
  return s;
}

void SymSeqSet::finalize() {
  offsets_.assign(slots_.size(), 0);
  by_target_.assign(colors_.size(), {});
  total_ = 0;
  for (std::uint32_t s = 0; s < slots_.size(); ++s) {
    const Slot& sl = slots_[s];
    offsets_[s] = total_;
    total_ += sl.size();
    by_target_[sl.target].push_back(s);
    const auto& perms = all_perms(sl.arity());
    if (sl.action_slot.size() != perms.size() || sl.action.size() != perms.size() * sl.size()) {
      throw ValidationError("slot " + slot_str(s) + ": action table has the wrong size");
    }
    for (std::size_t r = 0; r < perms.size(); ++r) {
      const std::uint32_t dst = sl.action_slot[r];
      if (dst >= slots_.size() || slots_[dst].target != sl.target ||
          slots_[dst].profile != act_right(sl.profile, perms[r])) {
        throw ValidationError("slot " + slot_str(s) + ": action of " + perms[r].str() +
                              " does not land in the permuted profile");
      }
      for (std::size_t x = 0; x < sl.size(); ++x) {
        if (sl.action[r * sl.size() + x] >= slots_[dst].size()) {
          throw ValidationError("slot " + slot_str(s) + ": action image out of range");
        }
      }
    }
  }
  for (auto& list : by_target_) {
    std::stable_sort(list.begin(), list.end(), [&](std::uint32_t a, std::uint32_t b) {
      return slots_[a].arity() < slots_[b].arity();
    });
  }
}

ElemRef SymSeqSet::element(std::size_t gid) const {
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), gid);
  const auto s = static_cast<std::uint32_t>(std::distance(offsets_.begin(), it) - 1);
  return {s, static_cast<std::uint32_t>(gid - offsets_[s])};
}

std::size_t SymSeqSet::max_arity() const {
  std::size_t n = 0;
  for (const auto& sl : slots_) n = std::max(n, sl.arity());
  return n;
}

std::string SymSeqSet::slot_str(std::uint32_t s) const {
  const Slot& sl = slots_.at(s);
  std::string out = colors_[sl.target] + ";(";
  for (std::size_t i = 0; i < sl.profile.size(); ++i) {
    if (i) out += ",";
    out += colors_[sl.profile[i]];
  }
  return out + ")";
}

std::string SymSeqSet::elem_str(ElemRef x) const {
  return slot_str(x.slot) + ":" + slots_.at(x.slot).labels.at(x.elem);
}

std::string SymSeqSet::dump() const {
  std::string out;
  for (std::uint32_t s = 0; s < slots_.size(); ++s) {
    const Slot& sl = slots_[s];
    out += "slot " + slot_str(s) + " size " + std::to_string(sl.size()) + "\n";
    for (std::size_t x = 0; x < sl.size(); ++x) {
      out += "  " + std::to_string(x) + " " + sl.labels[x] + "\n";
    }
    const auto& perms = all_perms(sl.arity());
    for (std::size_t r = 0; r < perms.size(); ++r) {
      out += "  act " + perms[r].str() + " -> " + slot_str(sl.action_slot[r]) + " [";
      for (std::size_t x = 0; x < sl.size(); ++x) {
        if (x) out += ",";
        out += std::to_string(sl.action[r * sl.size() + x]);
      }
      out += "]\n";
    }
  }
  return out;
}

Report check_action(const SymSeqSet& x, bool stop_early) {
  Report rep("action");
  // Typing and bijectivity first: the functoriality pass follows the tables.
  for (std::uint32_t s = 0; s < x.slot_count(); ++s) {
    const Slot& sl = x.slot(s);
    const auto& perms = all_perms(sl.arity());
    bool ok = sl.action_slot.size() == perms.size() && sl.action.size() == perms.size() * sl.size();
    rep.expect("action-typing", ok, [&] { return x.slot_str(s) + " has a malformed action table"; });
    if (!ok) {
      if (stop_early) return rep;
      continue;
    }
    for (std::size_t r = 0; r < perms.size(); ++r) {
      const std::uint32_t ts = sl.action_slot[r];
      ok = ts < x.slot_count() && x.slot(ts).target == sl.target &&
           x.slot(ts).profile == act_right(sl.profile, perms[r]) && x.slot(ts).size() == sl.size();
      rep.expect("action-typing", ok, [&] {
        return x.slot_str(s) + " acted by " + perms[r].str() + " lands in " +
               (ts < x.slot_count() ? x.slot_str(ts) : std::string("<no slot>"));
      });
      if (!ok) {
        if (stop_early) return rep;
        continue;
      }
      std::vector<bool> hit(sl.size(), false);
      for (std::uint32_t e = 0; e < sl.size() && ok; ++e) {
        const std::uint32_t y = sl.action[r * sl.size() + e];
        ok = y < sl.size() && !hit[y];
        if (ok) hit[y] = true;
      }
      rep.expect("action-bijective", ok,
                 [&] { return x.slot_str(s) + " acted by " + perms[r].str(); });
      if (!ok && stop_early) return rep;
    }
  }
  if (!rep.passed()) return rep;
  for (std::uint32_t s = 0; s < x.slot_count(); ++s) {
    const Slot& sl = x.slot(s);
    const std::size_t n = sl.arity();
    const auto& perms = all_perms(n);
    for (std::uint32_t e = 0; e < sl.size(); ++e) {
      const ElemRef el{s, e};
      const bool ok = x.act(el, 0) == el;
      rep.expect("action-identity", ok, [&] { return x.elem_str(el); });
      if (!ok && stop_early) return rep;
    }
    if (n < 2) continue;
    const PermGroup& group = perm_group(n);
    for (std::size_t r = 0; r < perms.size(); ++r) {
      for (std::size_t i = 0; i + 1 < n; ++i) {
        const std::size_t t = perm_rank(Perm::adjacent(n, i));
        const std::size_t st = group.compose(r, t);
        for (std::uint32_t e = 0; e < sl.size(); ++e) {
          const ElemRef el{s, e};
          const ElemRef lhs = x.act(el, st);
          const ElemRef rhs = x.act(x.act(el, r), t);
          const bool ok = lhs == rhs;
          rep.expect("action-composition", ok, [&] {
            return x.elem_str(el) + " acted by " + perms[r].str() + " then " +
                   perms[t].str() + " gives " + x.elem_str(rhs) + ", by the composite " +
                   x.elem_str(lhs);
          });
          if (!ok && stop_early) return rep;
        }
      }
    }
  }
  return rep;
}

SymSeqSet circle_unit(const std::vector<std::string>& colors) {
  if (colors.empty()) throw ArgumentError("circle_unit: empty color set");
  SymSeqSet out(colors);
  for (Color t = 0; t < colors.size(); ++t) out.add_slot({t}, t, {"1"});
  out.define_action([](std::uint32_t s, std::uint32_t x, const Perm&) { return ElemRef{s, x}; });
  return out;
}

std::vector<std::uint32_t> CoendTuple::encode() const {
  std::vector<std::uint32_t> out{target, static_cast<std::uint32_t>(a.size())};
  out.insert(out.end(), a.begin(), a.end());
  out.push_back(x);
  for (std::size_t i = 0; i < b.size(); ++i) {
    out.push_back(static_cast<std::uint32_t>(b[i].size()));
    out.insert(out.end(), b[i].begin(), b[i].end());
    out.push_back(y[i]);
  }
  out.insert(out.end(), kappa.images().begin(), kappa.images().end());
  return out;
}

Profile CoendTuple::concatenated_b() const {
  Profile out;
  for (const auto& bi : b) out.insert(out.end(), bi.begin(), bi.end());
  return out;
}

std::optional<ElemRef> CoendResult::classify(const CoendTuple& t) const {
  auto it = index.find(t.encode());
  if (it == index.end()) return std::nullopt;
  return raw_class[it->second];
}

namespace {

using DisjointSets = boost::disjoint_sets_with_storage<>;

/// Groups raw tuples into classes, orders classes by their least encoding
/// and builds the output slots. `output` gives (profile, target) of a raw
/// tuple; `apply` gives the raw id reached by acting with a permutation.
template <class Raw, class Output, class Label, class Apply>
void assemble_classes(const std::vector<Raw>& raw, DisjointSets& sets, Output output,
                      Label label, Apply apply, SymSeqSet& seq, std::vector<ElemRef>& raw_class,
                      std::vector<std::vector<std::vector<std::uint32_t>>>& members) {
  // Raw tuples are enumerated in no particular order; sort by encoding so
  // representatives are the lexicographically least members.
  std::vector<std::uint32_t> order(raw.size());
  std::iota(order.begin(), order.end(), 0u);
  std::vector<std::vector<std::uint32_t>> codes(raw.size());
  for (std::size_t r = 0; r < raw.size(); ++r) codes[r] = raw[r].encode();
  std::sort(order.begin(), order.end(),
            [&](std::uint32_t p, std::uint32_t q) { return codes[p] < codes[q]; });

  std::map<std::pair<Profile, Color>, std::vector<std::uint32_t>> roots_by_slot;
  std::vector<std::int64_t> root_order(raw.size(), -1);
  std::vector<std::vector<std::uint32_t>> by_root(raw.size());
  for (std::uint32_t r : order) {
    const auto root = static_cast<std::uint32_t>(sets.find_set(r));
    if (by_root[root].empty()) roots_by_slot[output(raw[r])].push_back(root);
    by_root[root].push_back(r);
  }

  raw_class.assign(raw.size(), {});
  members.clear();
  for (auto& [key, roots] : roots_by_slot) {
    std::vector<std::string> labels;
    for (auto root : roots) labels.push_back(label(raw[by_root[root][0]]));
    const std::uint32_t s = seq.add_slot(key.first, key.second, std::move(labels));
    members.emplace_back();
    for (std::uint32_t e = 0; e < roots.size(); ++e) {
      for (auto r : by_root[roots[e]]) raw_class[r] = {s, e};
      members.back().push_back(std::move(by_root[roots[e]]));
    }
  }
  seq.define_action([&](std::uint32_t s, std::uint32_t e, const Perm& p) {
    return raw_class[apply(members[s][e][0], p)];
  });
}

}  // namespace

CoendResult circle_product(const SymSeqSet& x, const SymSeqSet& y, std::size_t max_arity) {
  if (x.colors() != y.colors()) throw ArgumentError("circle_product: color sets differ");
  CoendResult res;
  res.seq = SymSeqSet(x.colors());

  // Enumerate raw tuples slot by slot of X, choosing Y slots for each input.
  for (std::uint32_t xs = 0; xs < x.slot_count(); ++xs) {
    const Slot& xsl = x.slot(xs);
    const std::size_t m = xsl.arity();
    std::vector<std::uint32_t> choice(m, 0);
    std::vector<const std::vector<std::uint32_t>*> options(m);
    bool empty = false;
    for (std::size_t i = 0; i < m; ++i) {
      options[i] = &y.slots_with_target(xsl.profile[i]);
      if (options[i]->empty()) empty = true;
    }
    if (empty) continue;
    while (true) {
      std::size_t n = 0;
      for (std::size_t i = 0; i < m; ++i) n += y.slot((*options[i])[choice[i]]).arity();
      if (n <= max_arity) {
        std::vector<std::uint32_t> ys(m, 0);
        for (std::uint32_t xe = 0; xe < xsl.size(); ++xe) {
          std::fill(ys.begin(), ys.end(), 0);
          while (true) {
            for (const Perm& kappa : all_perms(n)) {
              CoendTuple t;
              t.target = xsl.target;
              t.a = xsl.profile;
              t.x = xe;
              for (std::size_t i = 0; i < m; ++i) {
                const Slot& ysl = y.slot((*options[i])[choice[i]]);
                t.b.push_back(ysl.profile);
                t.y.push_back(ys[i]);
              }
              t.kappa = kappa;
              res.raw.push_back(std::move(t));
            }
            std::size_t i = 0;
            for (; i < m; ++i) {
              if (++ys[i] < y.slot((*options[i])[choice[i]]).size()) break;
              ys[i] = 0;
            }
            if (i == m) break;
          }
        }
      }
      std::size_t i = 0;
      for (; i < m; ++i) {
        if (++choice[i] < options[i]->size()) break;
        choice[i] = 0;
      }
      if (i == m) break;
    }
  }

  for (std::uint32_t r = 0; r < res.raw.size(); ++r) res.index.emplace(res.raw[r].encode(), r);
  DisjointSets sets(res.raw.size());
  auto lookup = [&](const CoendTuple& t) {
    auto it = res.index.find(t.encode());
    if (it == res.index.end()) throw Error("circle_product: relation left the raw tuple set");
    return it->second;
  };

  for (std::uint32_t r = 0; r < res.raw.size(); ++r) {
    const CoendTuple& t = res.raw[r];
    const std::size_t m = t.a.size();
    std::vector<std::size_t> lengths;
    for (const auto& bi : t.b) lengths.push_back(bi.size());
    const std::size_t n = t.kappa.degree();
    // Outer moves: s = t_i on the X side, compensated by a block permutation.
    for (std::size_t i = 0; i + 1 < m; ++i) {
      const Perm s = Perm::adjacent(m, i);
      CoendTuple u;
      u.target = t.target;
      u.a = act_right(t.a, s);
      const auto xs = x.find(t.a, t.target);
      u.x = x.act({*xs, t.x}, s).elem;
      u.b = act_right(t.b, s);
      u.y = act_right(t.y, s);
      u.kappa = compose(block_permutation(s, lengths).inverse(), t.kappa);
      sets.union_set(r, lookup(u));
    }
    // Inner moves: t_j inside block i on the Y side, compensated by a block sum.
    std::size_t offset = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t k = lengths[i];
      for (std::size_t j = 0; j + 1 < k; ++j) {
        const Perm tau = Perm::adjacent(k, j);
        CoendTuple u = t;
        const auto ys = y.find(t.b[i], t.a[i]);
        const ElemRef moved = y.act({*ys, t.y[i]}, tau);
        u.b[i] = act_right(t.b[i], tau);
        u.y[i] = moved.elem;
        const Perm sum = Perm::adjacent(n, offset + j);  // its own inverse
        u.kappa = compose(sum, t.kappa);
        sets.union_set(r, lookup(u));
      }
      offset += k;
    }
  }

  auto output = [](const CoendTuple& t) {
    return std::make_pair(act_right(t.concatenated_b(), t.kappa), t.target);
  };
  auto label = [&](const CoendTuple& t) {
    std::string s = "[" + x.slot(*x.find(t.a, t.target)).labels[t.x] + ";";
    for (std::size_t i = 0; i < t.b.size(); ++i) {
      if (i) s += ",";
      s += y.slot(*y.find(t.b[i], t.a[i])).labels[t.y[i]];
    }
    return s + ";" + t.kappa.str() + "]";
  };
  auto apply = [&](std::uint32_t r, const Perm& p) {
    CoendTuple u = res.raw[r];
    u.kappa = compose(u.kappa, p);
    return lookup(u);
  };
  assemble_classes(res.raw, sets, output, label, apply, res.seq, res.raw_class, res.members);
  return res;
}

PullbackResult pullback(const std::vector<Color>& f, const std::vector<std::string>& source_colors,
                        const SymSeqSet& x) {
  if (f.size() != source_colors.size()) throw ArgumentError("pullback: f is not total");
  for (Color c : f) {
    if (c >= x.color_count()) throw ArgumentError("pullback: f leaves the target colors");
  }
  std::vector<std::vector<Color>> fiber(x.color_count());
  for (Color c = 0; c < f.size(); ++c) fiber[f[c]].push_back(c);

  PullbackResult res;
  res.seq = SymSeqSet(source_colors);
  for (std::uint32_t s = 0; s < x.slot_count(); ++s) {
    const Slot& sl = x.slot(s);
    std::vector<Profile> profiles{{}};
    for (Color d : sl.profile) {
      std::vector<Profile> next;
      for (const auto& p : profiles) {
        for (Color c : fiber[d]) {
          next.push_back(p);
          next.back().push_back(c);
        }
      }
      profiles = std::move(next);
    }
    for (Color t : fiber[sl.target]) {
      for (const auto& c : profiles) {
        res.seq.add_slot(c, t, sl.labels);
        res.origin.push_back(s);
      }
    }
  }
  res.seq.define_action([&](std::uint32_t s, std::uint32_t e, const Perm& p) {
    const Slot& sl = res.seq.slot(s);
    const ElemRef img = x.act({res.origin[s], e}, p);
    return ElemRef{*res.seq.find(act_right(sl.profile, p), sl.target), img.elem};
  });
  return res;
}

std::vector<std::uint32_t> KanTuple::encode() const {
  std::vector<std::uint32_t> out{target, static_cast<std::uint32_t>(c.size())};
  out.insert(out.end(), c.begin(), c.end());
  out.push_back(x);
  out.insert(out.end(), lambda.images().begin(), lambda.images().end());
  return out;
}

std::optional<ElemRef> KanResult::classify(const KanTuple& t) const {
  auto it = index.find(t.encode());
  if (it == index.end()) return std::nullopt;
  return raw_class[it->second];
}

KanResult left_kan(const std::vector<Color>& f, const std::vector<std::string>& target_colors,
                   const SymSeqSet& x) {
  if (f.size() != x.color_count()) throw ArgumentError("left_kan: f is not total");
  for (Color c : f) {
    if (c >= target_colors.size()) throw ArgumentError("left_kan: f leaves the target colors");
  }
  KanResult res;
  res.seq = SymSeqSet(target_colors);
  for (std::uint32_t s = 0; s < x.slot_count(); ++s) {
    const Slot& sl = x.slot(s);
    for (std::uint32_t e = 0; e < sl.size(); ++e) {
      for (const Perm& lambda : all_perms(sl.arity())) {
        res.raw.push_back(KanTuple{sl.target, sl.profile, e, lambda});
      }
    }
  }
  for (std::uint32_t r = 0; r < res.raw.size(); ++r) res.index.emplace(res.raw[r].encode(), r);
  auto lookup = [&](const KanTuple& t) {
    auto it = res.index.find(t.encode());
    if (it == res.index.end()) throw Error("left_kan: relation left the raw tuple set");
    return it->second;
  };
  DisjointSets sets(res.raw.size());
  for (std::uint32_t r = 0; r < res.raw.size(); ++r) {
    const KanTuple& t = res.raw[r];
    const std::size_t n = t.c.size();
    const std::uint32_t xs = *x.find(t.c, t.target);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const Perm s = Perm::adjacent(n, i);
      KanTuple u{t.target, act_right(t.c, s), x.act({xs, t.x}, s).elem,
                 compose(s.inverse(), t.lambda)};
      sets.union_set(r, lookup(u));
    }
  }
  auto image = [&](const Profile& c) {
    Profile d;
    for (Color ci : c) d.push_back(f[ci]);
    return d;
  };
  auto output = [&](const KanTuple& t) {
    return std::make_pair(act_right(image(t.c), t.lambda), f[t.target]);
  };
  auto label = [&](const KanTuple& t) {
    return "[" + x.elem_str({*x.find(t.c, t.target), t.x}) + ";" + t.lambda.str() + "]";
  };
  auto apply = [&](std::uint32_t r, const Perm& p) {
    KanTuple u = res.raw[r];
    u.lambda = compose(u.lambda, p);
    return lookup(u);
  };
  assemble_classes(res.raw, sets, output, label, apply, res.seq, res.raw_class, res.members);
  return res;
}

namespace {

Profile image_profile(const std::vector<Color>& f, const Profile& c) {
  Profile d;
  for (Color ci : c) d.push_back(f[ci]);
  return d;
}

}  // namespace

Report check_kan_adjunction(const std::vector<Color>& f,
                            const std::vector<std::string>& source_colors,
                            const std::vector<std::string>& target_colors,
                            const SymSeqSet& x, const SymSeqSet& y) {
  Report rep("kan adjunction");
  const KanResult lx = left_kan(f, target_colors, x);
  const PullbackResult plx = pullback(f, source_colors, lx.seq);
  const PullbackResult py = pullback(f, source_colors, y);
  const KanResult lpy = left_kan(f, target_colors, py.seq);
  const KanResult lplx = left_kan(f, target_colors, plx.seq);
  const PullbackResult plpy = pullback(f, source_colors, lpy.seq);

  // Unit of X in f* f_! X: x |-> [c, t, e, x], read in the slot (c, t).
  auto unit = [&](const SymSeqSet& src, const KanResult& kan, const PullbackResult& back,
                  ElemRef e) -> std::optional<ElemRef> {
    const Slot& sl = src.slot(e.slot);
    const auto cls = kan.classify(KanTuple{sl.target, sl.profile, e.elem, Perm::identity(sl.arity())});
    if (!cls) return std::nullopt;
    const auto s = back.seq.find(sl.profile, sl.target);
    if (!s || back.origin[*s] != cls->slot) return std::nullopt;
    return ElemRef{*s, cls->elem};
  };
  // Counit on a raw tuple of f_! f* Z: [c, t, lambda, z] |-> z.lambda in Z.
  auto counit_raw = [&](const SymSeqSet& z, const PullbackResult& back, const KanTuple& t) {
    const std::uint32_t s = *back.seq.find(t.c, t.target);
    return z.act({back.origin[s], t.x}, t.lambda);
  };

  for (std::uint32_t s = 0; s < x.slot_count(); ++s) {
    for (std::uint32_t e = 0; e < x.slot(s).size(); ++e) {
      const ElemRef el{s, e};
      const auto u = unit(x, lx, plx, el);
      if (!rep.expect("unit-defined", u.has_value(), [&] { return x.elem_str(el); })) continue;
      for (std::size_t r = 0; r < all_perms(x.slot(s).arity()).size(); ++r) {
        const auto lhs = unit(x, lx, plx, x.act(el, r));
        const ElemRef rhs = plx.seq.act(*u, r);
        rep.expect("unit-equivariant", lhs && *lhs == rhs, [&] {
          return x.elem_str(el) + " under " + all_perms(x.slot(s).arity())[r].str();
        });
      }
    }
  }

  for (std::uint32_t s = 0; s < lpy.seq.slot_count(); ++s) {
    for (std::uint32_t e = 0; e < lpy.seq.slot(s).size(); ++e) {
      const auto& mem = lpy.members[s][e];
      const ElemRef value = counit_raw(y, py, lpy.raw[mem[0]]);
      for (auto r : mem) {
        const ElemRef other = counit_raw(y, py, lpy.raw[r]);
        rep.expect("counit-well-defined", other == value, [&] {
          return lpy.seq.elem_str({s, e}) + " has members with counit images " +
                 y.elem_str(value) + " and " + y.elem_str(other);
        });
      }
      const auto& perms = all_perms(lpy.seq.slot(s).arity());
      for (std::size_t r = 0; r < perms.size(); ++r) {
        const ElemRef moved = lpy.seq.act({s, e}, r);
        const ElemRef lhs = counit_raw(y, py, lpy.raw[lpy.members[moved.slot][moved.elem][0]]);
        rep.expect("counit-equivariant", lhs == y.act(value, r), [&] {
          return lpy.seq.elem_str({s, e}) + " under " + perms[r].str();
        });
      }
    }
  }

  // f_! X -> f_! f* f_! X -> f_! X.
  for (std::uint32_t s = 0; s < lx.seq.slot_count(); ++s) {
    for (std::uint32_t e = 0; e < lx.seq.slot(s).size(); ++e) {
      const ElemRef cls{s, e};
      std::optional<ElemRef> image;
      for (auto r : lx.members[s][e]) {
        const KanTuple& t = lx.raw[r];
        const auto u = unit(x, lx, plx, {*x.find(t.c, t.target), t.x});
        std::optional<ElemRef> mid;
        if (u) mid = lplx.classify(KanTuple{t.target, t.c, u->elem, t.lambda});
        std::optional<ElemRef> back;
        if (mid) back = counit_raw(lx.seq, plx, lplx.raw[lplx.members[mid->slot][mid->elem][0]]);
        if (!image) image = back;
        rep.expect("triangle-left-well-defined", back.has_value() && back == image,
                   [&] { return lx.seq.elem_str(cls) + " raw " + std::to_string(r); });
      }
      rep.expect("triangle-left", image && *image == cls, [&] {
        return lx.seq.elem_str(cls) + " is sent to " +
               (image ? lx.seq.elem_str(*image) : std::string("nothing"));
      });
    }
  }

  // f* Y -> f* f_! f* Y -> f* Y.
  for (std::uint32_t s = 0; s < py.seq.slot_count(); ++s) {
    for (std::uint32_t e = 0; e < py.seq.slot(s).size(); ++e) {
      const ElemRef el{s, e};
      const auto u = unit(py.seq, lpy, plpy, el);
      std::optional<ElemRef> back;
      if (u) {
        const ElemRef cls{plpy.origin[u->slot], u->elem};
        const ElemRef z = counit_raw(y, py, lpy.raw[lpy.members[cls.slot][cls.elem][0]]);
        const Slot& sl = py.seq.slot(s);
        const auto ps = py.seq.find(sl.profile, sl.target);
        if (ps && py.origin[*ps] == z.slot) back = ElemRef{*ps, z.elem};
      }
      rep.expect("triangle-right", back && *back == el, [&] { return py.seq.elem_str(el); });
    }
  }
  return rep;
}

Report check_pullback_monoidal(const std::vector<Color>& f,
                               const std::vector<std::string>& source_colors,
                               const SymSeqSet& x, const SymSeqSet& y, std::size_t max_arity) {
  Report rep("pullback lax structure");
  const PullbackResult px = pullback(f, source_colors, x);
  const PullbackResult py = pullback(f, source_colors, y);
  const CoendResult src = circle_product(px.seq, py.seq, max_arity);
  const CoendResult xy = circle_product(x, y, max_arity);
  const PullbackResult pxy = pullback(f, source_colors, xy.seq);

  auto map_raw = [&](const CoendTuple& t) -> std::optional<ElemRef> {
    CoendTuple u = t;
    u.a = image_profile(f, t.a);
    u.target = f[t.target];
    for (auto& bi : u.b) bi = image_profile(f, bi);
    const auto cls = xy.classify(u);
    if (!cls) return std::nullopt;
    const auto s = pxy.seq.find(act_right(t.concatenated_b(), t.kappa), t.target);
    if (!s || pxy.origin[*s] != cls->slot) return std::nullopt;
    return ElemRef{*s, cls->elem};
  };

  for (std::uint32_t s = 0; s < src.seq.slot_count(); ++s) {
    for (std::uint32_t e = 0; e < src.seq.slot(s).size(); ++e) {
      const ElemRef cls{s, e};
      const auto value = map_raw(src.representative(cls));
      for (auto r : src.members[s][e]) {
        const auto other = map_raw(src.raw[r]);
        rep.expect("mu-well-defined", value && other == value,
                   [&] { return src.seq.elem_str(cls); });
      }
      if (!value) continue;
      const auto& perms = all_perms(src.seq.slot(s).arity());
      for (std::size_t r = 0; r < perms.size(); ++r) {
        const auto lhs = map_raw(src.representative(src.seq.act(cls, r)));
        rep.expect("mu-equivariant", lhs && *lhs == pxy.seq.act(*value, r),
                   [&] { return src.seq.elem_str(cls) + " under " + perms[r].str(); });
      }
    }
  }

  const SymSeqSet unit_src = circle_unit(source_colors);
  const PullbackResult unit_tgt = pullback(f, source_colors, circle_unit(x.colors()));
  for (Color t = 0; t < source_colors.size(); ++t) {
    const auto s = unit_tgt.seq.find({t}, t);
    rep.expect("unit-map", s.has_value() && unit_tgt.seq.slot(*s).size() == 1 &&
                               unit_src.find({t}, t).has_value(),
               [&] { return "color " + source_colors[t]; });
  }
  return rep;
}

SymSeqSet orbit_sequence(const std::vector<std::string>& colors,
                         const std::vector<OrbitSpec>& orbits) {
  SymSeqSet out(colors);
  std::map<std::pair<Profile, Color>, std::vector<std::string>> labels;
  // Element keys: orbit index with either a permutation rank or a profile.
  std::map<std::pair<std::size_t, Profile>, std::uint32_t> position;
  auto key_of = [](const OrbitSpec& o, const Perm& s) {
    if (o.free) {
      const auto& img = s.images();
      return Profile(img.begin(), img.end());
    }
    return act_right(o.profile, s);
  };
  for (std::size_t k = 0; k < orbits.size(); ++k) {
    const OrbitSpec& o = orbits[k];
    for (const Perm& s : all_perms(o.profile.size())) {
      const Profile key = key_of(o, s);
      if (position.count({k, key})) continue;
      auto& slot_labels = labels[{act_right(o.profile, s), o.target}];
      position[{k, key}] = static_cast<std::uint32_t>(slot_labels.size());
      slot_labels.push_back(o.free ? o.name + s.str() : o.name);
    }
  }
  for (auto& [key, ls] : labels) out.add_slot(key.first, key.second, ls);

  // Recover (orbit, key) of each element to define the action.
  std::vector<std::vector<std::pair<std::size_t, Perm>>> origin(out.slot_count());
  for (std::size_t s = 0; s < out.slot_count(); ++s) origin[s].resize(out.slot(s).size());
  for (std::size_t k = 0; k < orbits.size(); ++k) {
    const OrbitSpec& o = orbits[k];
    for (const Perm& s : all_perms(o.profile.size())) {
      const auto slot = *out.find(act_right(o.profile, s), o.target);
      origin[slot][position[{k, key_of(o, s)}]] = {k, s};
    }
  }
  out.define_action([&](std::uint32_t s, std::uint32_t e, const Perm& p) {
    const auto& [k, g] = origin[s][e];
    const OrbitSpec& o = orbits[k];
    const Perm moved = compose(g, p);
    const auto slot = *out.find(act_right(o.profile, moved), o.target);
    return ElemRef{slot, position.at({k, key_of(o, moved)})};
  });
  return out;
}

std::vector<KanInstance> bundled_kan_instances() {
  const std::vector<std::string> two{"x", "y"};
  const std::vector<std::string> one{"*"};
  const std::vector<Color> collapse{0, 0};
  std::vector<KanInstance> out;

  SymSeqSet y1 = orbit_sequence(one, {{{0, 0}, 0, true, "m"},
                                      {{0}, 0, true, "u"},
                                      {{0}, 0, true, "v"},
                                      {{}, 0, true, "e"},
                                      {{0, 0, 0}, 0, false, "c"}});
  out.push_back({"collapse-free", two, one, collapse,
                 orbit_sequence(two, {{{0, 1}, 0, true, "g"}, {{1}, 0, true, "h"}}), y1});
  out.push_back({"collapse-mixed", two, one, collapse,
                 orbit_sequence(two, {{{0, 0}, 1, false, "k"},
                                      {{0}, 1, true, "p"},
                                      {{}, 0, true, "z"},
                                      {{0, 1, 1}, 1, true, "q"}}),
                 y1});
  out.push_back({"identity", two, two, {0, 1},
                 orbit_sequence(two, {{{0, 1}, 0, true, "g"}, {{1, 1}, 0, false, "k"}}),
                 orbit_sequence(two, {{{1, 0}, 1, true, "r"}, {{0}, 1, true, "s"}})});
  return out;
}

}  // namespace aqftop
