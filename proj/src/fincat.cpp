#include "aqftop/fincat.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

namespace aqftop {

ObjId OrthCategory::object_index(const std::string& label) const {
  for (std::size_t i = 0; i < objects_.size(); ++i) {
    if (objects_[i] == label) return static_cast<ObjId>(i);
  }
  throw ArgumentError("unknown object '" + label + "' in category '" + name_ + "'");
}

MorId OrthCategory::morphism_index(const std::string& label) const {
  for (std::size_t i = 0; i < morphisms_.size(); ++i) {
    if (morphisms_[i].name == label) return static_cast<MorId>(i);
  }
  throw ArgumentError("unknown morphism '" + label + "' in category '" + name_ + "'");
}

MorId OrthCategory::compose(MorId then, MorId first) const {
  const MorId r = table_.at(then * morphisms_.size() + first);
  if (r == kNoMorphism) {
    throw ArgumentError("cannot compose " + morphism_name(then) + " after " +
                        morphism_name(first));
  }
  return r;
}

OrthPairs OrthCategory::orth_pairs() const {
  OrthPairs out;
  const std::size_t m = morphisms_.size();
  for (std::size_t f = 0; f < m; ++f) {
    for (std::size_t g = 0; g < m; ++g) {
      if (orth_[f * m + g]) out.emplace_back(f, g);
    }
  }
  return out;
}

OrthCategory OrthCategory::with_orthogonality(const OrthPairs& pairs) const {
  validate_orthogonality(*this, pairs);
  OrthCategory copy = *this;
  std::fill(copy.orth_.begin(), copy.orth_.end(), false);
  for (auto [f, g] : pairs) copy.orth_[f * morphisms_.size() + g] = true;
  return copy;
}

OrthCategory build_category(const CategoryData& data) {
  OrthCategory cat;
  cat.name_ = data.name;
  std::set<std::string> labels;
  for (const auto& o : data.objects) {
    if (o.empty()) throw ValidationError("empty object label");
    if (!labels.insert(o).second) throw ValidationError("duplicate object '" + o + "'");
    cat.objects_.push_back(o);
  }

  std::map<std::string, MorId> by_name;
  auto add_morphism = [&](const std::string& name, ObjId s, ObjId t) {
    if (!by_name.emplace(name, static_cast<MorId>(cat.morphisms_.size())).second) {
      throw ValidationError("duplicate morphism '" + name + "'");
    }
    cat.morphisms_.push_back({name, s, t});
  };

  if (!data.explicit_identities) {
    for (std::size_t x = 0; x < cat.objects_.size(); ++x) {
      add_morphism("id_" + cat.objects_[x], static_cast<ObjId>(x), static_cast<ObjId>(x));
    }
  }
  for (const auto& a : data.morphisms) {
    add_morphism(a.name, cat.object_index(a.source), cat.object_index(a.target));
  }
  auto mor = [&](const std::string& name) {
    auto it = by_name.find(name);
    if (it == by_name.end()) throw ValidationError("unknown morphism '" + name + "'");
    return it->second;
  };

  cat.identities_.assign(cat.objects_.size(), kNoMorphism);
  if (data.explicit_identities) {
    for (const auto& [obj, name] : data.identities) {
      const ObjId x = cat.object_index(obj);
      const MorId f = mor(name);
      if (cat.source(f) != x || cat.target(f) != x) {
        throw ValidationError("identity '" + name + "' of " + obj + " is not an endomorphism of it");
      }
      cat.identities_[x] = f;
    }
    for (std::size_t x = 0; x < cat.objects_.size(); ++x) {
      if (cat.identities_[x] == kNoMorphism) {
        throw ValidationError("missing identity for object '" + cat.objects_[x] + "'");
      }
    }
  } else {
    std::iota(cat.identities_.begin(), cat.identities_.end(), 0u);
  }

  const std::size_t m = cat.morphisms_.size();
  cat.table_.assign(m * m, kNoMorphism);
  auto set_entry = [&](MorId then, MorId first, MorId result) {
    const std::string what = cat.morphism_name(then) + " o " + cat.morphism_name(first);
    if (cat.target(first) != cat.source(then)) {
      throw ValidationError("composition entry for non-composable pair " + what);
    }
    if (cat.source(result) != cat.source(first) || cat.target(result) != cat.target(then)) {
      throw ValidationError("composite " + what + " = " + cat.morphism_name(result) +
                            " has the wrong source or target");
    }
    MorId& slot = cat.table_[then * m + first];
    if (slot != kNoMorphism && slot != result) {
      throw ValidationError("conflicting entries for " + what + ": " +
                            cat.morphism_name(slot) + " and " + cat.morphism_name(result));
    }
    slot = result;
  };
  if (!data.explicit_identities) {
    for (MorId f = 0; f < m; ++f) {
      set_entry(cat.identities_[cat.target(f)], f, f);
      set_entry(f, cat.identities_[cat.source(f)], f);
    }
  }
  for (const auto& c : data.compositions) set_entry(mor(c.then), mor(c.first), mor(c.result));

  for (MorId g = 0; g < m; ++g) {
    for (MorId f = 0; f < m; ++f) {
      if (cat.target(f) == cat.source(g) && cat.table_[g * m + f] == kNoMorphism) {
        throw ValidationError("composition table gap: " + cat.morphism_name(g) + " o " +
                              cat.morphism_name(f) + " is not defined");
      }
    }
  }
  for (MorId f = 0; f < m; ++f) {
    const MorId left = cat.table_[cat.identities_[cat.target(f)] * m + f];
    const MorId right = cat.table_[f * m + cat.identities_[cat.source(f)]];
    if (left != f || right != f) {
      throw ValidationError("identity law fails for " + cat.morphism_name(f));
    }
  }
  for (MorId f = 0; f < m; ++f) {
    for (MorId g = 0; g < m; ++g) {
      if (cat.target(f) != cat.source(g)) continue;
      const MorId gf = cat.table_[g * m + f];
      for (MorId h = 0; h < m; ++h) {
        if (cat.target(g) != cat.source(h)) continue;
        const MorId hg = cat.table_[h * m + g];
        const MorId a = cat.table_[h * m + gf];
        const MorId b = cat.table_[hg * m + f];
        if (a != b) {
          throw ValidationError("non-associative triple (" + cat.morphism_name(f) + ", " +
                                cat.morphism_name(g) + ", " + cat.morphism_name(h) +
                                "): h o (g o f) = " + cat.morphism_name(a) +
                                " but (h o g) o f = " + cat.morphism_name(b));
        }
      }
    }
  }

  const std::size_t n = cat.objects_.size();
  cat.homs_.assign(n * n, {});
  for (MorId f = 0; f < m; ++f) cat.homs_[cat.source(f) * n + cat.target(f)].push_back(f);
  cat.orth_.assign(m * m, false);
  return cat;
}

OrthCategory validate_category(const CategoryData& data) {
  OrthCategory cat = build_category(data);
  OrthPairs pairs;
  for (const auto& [f, g] : data.orth) {
    pairs.emplace_back(cat.morphism_index(f), cat.morphism_index(g));
  }
  if (data.orth_generators) pairs = orthogonal_closure(cat, pairs);
  return cat.with_orthogonality(pairs);
}

std::optional<std::string> orthogonality_violation(const OrthCategory& cat,
                                                   const OrthPairs& pairs) {
  const std::set<std::pair<MorId, MorId>> rel(pairs.begin(), pairs.end());
  auto name = [&](MorId f) { return cat.morphism_name(f); };
  auto pair_str = [&](MorId f, MorId g) { return "(" + name(f) + ", " + name(g) + ")"; };
  for (auto [f, g] : rel) {
    if (cat.target(f) != cat.target(g)) {
      return "pair " + pair_str(f, g) + " has no common target";
    }
  }
  for (auto [f, g] : rel) {
    if (!rel.count({g, f})) {
      return "asymmetric: " + pair_str(f, g) + " without " + pair_str(g, f);
    }
  }
  const std::size_t m = cat.morphism_count();
  for (auto [f, g] : rel) {
    for (MorId h = 0; h < m; ++h) {
      if (cat.source(h) != cat.target(f)) continue;
      const MorId hf = cat.compose(h, f);
      const MorId hg = cat.compose(h, g);
      if (!rel.count({hf, hg})) {
        return "not stable under post-composition: " + pair_str(f, g) + " with " + name(h) +
               " gives " + pair_str(hf, hg);
      }
    }
    for (MorId h1 = 0; h1 < m; ++h1) {
      if (cat.target(h1) != cat.source(f)) continue;
      for (MorId h2 = 0; h2 < m; ++h2) {
        if (cat.target(h2) != cat.source(g)) continue;
        const MorId a = cat.compose(f, h1);
        const MorId b = cat.compose(g, h2);
        if (!rel.count({a, b})) {
          return "not stable under pre-composition: " + pair_str(f, g) + " with (" + name(h1) +
                 ", " + name(h2) + ") gives " + pair_str(a, b);
        }
      }
    }
  }
  return std::nullopt;
}

void validate_orthogonality(const OrthCategory& cat, const OrthPairs& pairs) {
  if (auto v = orthogonality_violation(cat, pairs)) throw ValidationError(*v);
}

OrthPairs orthogonal_closure(const OrthCategory& cat, const OrthPairs& generators) {
  std::set<std::pair<MorId, MorId>> rel;
  std::deque<std::pair<MorId, MorId>> work;
  auto add = [&](MorId f, MorId g) {
    if (rel.insert({f, g}).second) work.emplace_back(f, g);
    if (rel.insert({g, f}).second) work.emplace_back(g, f);
  };
  for (auto [f, g] : generators) {
    if (cat.target(f) != cat.target(g)) {
      throw ValidationError("generator (" + cat.morphism_name(f) + ", " + cat.morphism_name(g) +
                            ") has no common target");
    }
    add(f, g);
  }
  const std::size_t m = cat.morphism_count();
  while (!work.empty()) {
    auto [f, g] = work.front();
    work.pop_front();
    for (MorId h = 0; h < m; ++h) {
      if (cat.source(h) == cat.target(f)) add(cat.compose(h, f), cat.compose(h, g));
    }
    for (MorId h1 = 0; h1 < m; ++h1) {
      if (cat.target(h1) != cat.source(f)) continue;
      for (MorId h2 = 0; h2 < m; ++h2) {
        if (cat.target(h2) == cat.source(g)) add(cat.compose(f, h1), cat.compose(g, h2));
      }
    }
  }
  return OrthPairs(rel.begin(), rel.end());
}

std::vector<std::vector<MorId>> hom_tuple(const OrthCategory& cat, const Profile& c,
                                          ObjId t) {
  if (t >= cat.object_count()) throw ArgumentError("hom_tuple: unknown target");
  std::vector<std::vector<MorId>> out{{}};
  for (ObjId ci : c) {
    if (ci >= cat.object_count()) throw ArgumentError("hom_tuple: unknown object in profile");
    const auto& choices = cat.hom(ci, t);
    std::vector<std::vector<MorId>> next;
    next.reserve(out.size() * choices.size());
    for (const auto& prefix : out) {
      for (MorId f : choices) {
        next.push_back(prefix);
        next.back().push_back(f);
      }
    }
    out = std::move(next);
  }
  return out;
}

std::pair<Profile, Perm> profile_rev(const Profile& c) {
  Perm rho = order_reversal(c.size());
  return {act_right(c, rho), std::move(rho)};
}

Perm rev_morphism(const Perm& s) {
  const Perm rho = order_reversal(s.degree());
  return compose(rho, compose(s, rho));
}

std::string profile_str(const OrthCategory& cat, const Profile& c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ",";
    s += cat.object_name(c[i]);
  }
  return s + ")";
}

std::vector<Profile> all_profiles(std::size_t colors, std::size_t n) {
  std::vector<Profile> out{{}};
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Profile> next;
    for (const auto& p : out) {
      for (std::size_t x = 0; x < colors; ++x) {
        next.push_back(p);
        next.back().push_back(static_cast<ObjId>(x));
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace aqftop
