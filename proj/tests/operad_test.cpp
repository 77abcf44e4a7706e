#include <random>
#include <string>

#include "aqftop/aqft.hpp"
#include "corpus.hpp"
#include "doctest.h"

using namespace aqftop;
using aqftop::testing::bundled_categories;
using aqftop::testing::load_category;
using aqftop::testing::load_monoid;

namespace {

/// Word of sigma on distinct letters: position p holds a_{sigma^-1(p)}.
std::string word(const Perm& sigma, const std::vector<std::string>& letters) {
  const Perm inv = sigma.inverse();
  std::string w;
  for (std::size_t p = 0; p < sigma.degree(); ++p) w += letters[inv(p)];
  return w;
}

const Perm& perm_of(const ComponentOperad& op, ElemRef e) {
  return all_perms(op.seq.slot(e.slot).arity())[e.elem];
}

/// o with x substituted at input i, the other inputs being units.
std::optional<ElemRef> partial(const ComponentOperad& op, ElemRef o, std::size_t i, ElemRef x) {
  const Slot& s = op.seq.slot(o.slot);
  std::vector<ElemRef> inputs;
  for (std::size_t k = 0; k < s.arity(); ++k) {
    if (k == i) {
      inputs.push_back(x);
      continue;
    }
    const auto u = std::find_if(op.units.begin(), op.units.end(), [&](ElemRef e) {
      return op.seq.slot(e.slot).target == s.profile[k];
    });
    inputs.push_back(*u);
  }
  return op.compose(o, inputs);
}

AlgebraPresentation monoid_algebra(const std::string& cat_file, const Monoid& m,
                                   std::size_t arity) {
  const OrthCategory cat = load_category(cat_file);
  const AqftOperad op = build_aqft_operad(cat, arity);
  FunctorToMon f;
  f.objects = {m};
  f.morphisms = {LinMap::identity(m.dim())};
  return algebra_from_functor(f, op);
}

}  // namespace

TEST_CASE("associative and commutative operads satisfy the axioms") {
  CHECK(associative_operad(0).units.empty());
  for (std::size_t n = 0; n <= 4; ++n) {
    CHECK(check_operad_axioms(associative_operad(n), n).passed());
    CHECK(check_operad_axioms(commutative_operad(n), n).passed());
  }
  const ComponentOperad as = associative_operad(4);
  for (std::size_t n = 0; n <= 4; ++n) CHECK(as.seq.slot(*as.seq.find(Profile(n, 0), 0)).size() == factorial(n));
}

TEST_CASE("composition in As is substitution of words") {
  const ComponentOperad as = associative_operad(4);
  const std::vector<std::string> letters{"a", "b", "c", "d"};
  std::size_t shapes = 0;
  for_each_shape(as.seq, 4, [&](ElemRef o, std::span<const ElemRef> inputs) {
    const auto r = as.compose(o, inputs);
    REQUIRE(r.has_value());
    // Block j reads the next |x_j| letters; the outer word orders the blocks.
    std::vector<std::string> blocks;
    std::size_t next = 0;
    for (const ElemRef& x : inputs) {
      const Perm& t = perm_of(as, x);
      std::vector<std::string> mine(letters.begin() + next, letters.begin() + next + t.degree());
      blocks.push_back(word(t, mine));
      next += t.degree();
    }
    CHECK(word(perm_of(as, *r), letters) == word(perm_of(as, o), blocks));
    ++shapes;
  });
  CHECK(shapes > 100);
}

TEST_CASE("a swapped composite is rejected with a witness") {
  ComponentOperad as = associative_operad(3);
  const std::uint32_t s2 = *as.seq.find({0, 0}, 0), s1 = *as.seq.find({0}, 0);
  const std::vector<ElemRef> units{{s1, 0}, {s1, 0}};
  const GammaKey key(as.gid({s2, 0}), std::vector<std::uint32_t>{as.gid(units[0]), as.gid(units[1])});
  as.gamma.set(key, as.gid({s2, 1}));
  const Report r = check_operad_axioms(as, 3);
  CHECK_FALSE(r.passed());
  CHECK_FALSE(r.family_passed("unit-right"));
  CHECK_FALSE(r.find("unit-right")->witness.empty());
}

TEST_CASE("orbit representatives decide associativity like the full run") {
  CheckOptions brute;
  brute.symmetry_reduced = false;
  std::mt19937 rng(7);
  for (const std::string& name : bundled_categories()) {
    INFO(name);
    const AqftOperad op = build_aqft_operad(load_category(name), 3);
    CHECK(check_operad_axioms(op.operad, 3).passed());
    CHECK(check_operad_axioms(op.operad, 3, brute).passed());
    for (int trial = 0; trial < 25; ++trial) {
      ComponentOperad m = op.operad;
      const std::size_t r = rng() % m.gamma.shape_count();
      const auto v = m.gamma.at(r);
      if (!v) continue;
      const ElemRef e = m.elem(*v);
      const auto size = static_cast<std::uint32_t>(m.seq.slot(e.slot).size());
      if (size < 2) continue;
      m.gamma.set_at(r, m.gid({e.slot, (e.elem + 1) % size}));
      CHECK(check_operad_axioms(m, 3).passed() == check_operad_axioms(m, 3, brute).passed());
    }
  }
}

TEST_CASE("every single-entry mutation is detected") {
  std::vector<ComponentOperad> ops{associative_operad(3), commutative_operad(3)};
  for (const std::string& name : {"terminal_empty.cat", "arrow_perp.cat", "vee.cat"}) {
    ops.push_back(build_aqft_operad(load_category(name), 3).operad);
  }
  for (const ComponentOperad& op : ops) {
    const MutationSweep s = mutation_sweep(op, 3);
    CHECK(s.mutants > 0);
    CHECK(s.detected == s.mutants);
    CHECK(s.undetected.empty());
  }
  ComponentOperad broken = associative_operad(2);
  broken.units.clear();
  CHECK_THROWS_AS(mutation_sweep(broken, 2), ValidationError);
}

TEST_CASE("partial compositions at disjoint inputs commute") {
  std::mt19937 rng(11);
  const ComponentOperad ops[] = {associative_operad(4),
                                 build_aqft_operad(load_category("square.cat"), 4).operad};
  for (const ComponentOperad& op : ops) {
    // Small operations by target color, so that both composites stay within arity 4.
    std::vector<std::vector<ElemRef>> small(op.seq.color_count());
    std::vector<ElemRef> outers;
    for (std::uint32_t g = 0; g < op.seq.element_count(); ++g) {
      const ElemRef e = op.elem(g);
      const Slot& s = op.seq.slot(e.slot);
      if (s.arity() <= 1) small[s.target].push_back(e);
      if (s.arity() == 2 || s.arity() == 3) outers.push_back(e);
    }
    for (int trial = 0; trial < 300; ++trial) {
      const ElemRef o = outers[rng() % outers.size()];
      const Slot& so = op.seq.slot(o.slot);
      const std::size_t i = rng() % (so.arity() - 1);
      const std::size_t j = i + 1 + rng() % (so.arity() - i - 1);
      const auto& xs = small[so.profile[i]];
      const auto& ys = small[so.profile[j]];
      if (xs.empty() || ys.empty()) continue;
      const ElemRef x = xs[rng() % xs.size()], y = ys[rng() % ys.size()];
      const std::size_t shift = op.seq.slot(x.slot).arity();
      const auto first = partial(op, o, i, x), second = partial(op, o, j, y);
      REQUIRE(first);
      REQUIRE(second);
      const auto a = partial(op, *first, j + shift - 1, y);
      const auto b = partial(op, *second, i, x);
      REQUIRE(a);
      REQUIRE(b);
      CHECK(*a == *b);
    }
  }
}

TEST_CASE("the monoid formulation agrees on one-color operads") {
  CHECK(check_monoid_formulation(associative_operad(3), 3).passed());
  CHECK(check_monoid_formulation(commutative_operad(3), 3).passed());
  const PositivePart p = positive_part(associative_operad(3));
  CHECK(p.seq.find({}, 0) == std::nullopt);
  CHECK(p.seq.element_count() == 1 + 2 + 6);
}

TEST_CASE("algebras over As and Com") {
  const Monoid z2 = load_monoid("set_z2.alg", "Z2");
  const Monoid magma = load_monoid("invalid/magma.alg", "Magma");
  const Monoid mat = load_monoid("mat2_dagger.alg", "Mat2");

  const ComponentOperad as = build_aqft_operad(load_category("terminal_empty.cat"), 3).operad;
  const ComponentOperad com = build_aqft_operad(load_category("terminal_full.cat"), 3).operad;
  CHECK(check_algebra(as, monoid_algebra("terminal_empty.cat", z2, 3), 3).passed());
  CHECK(check_algebra(as, monoid_algebra("terminal_empty.cat", mat, 3), 3).passed());
  CHECK(check_algebra(com, monoid_algebra("terminal_full.cat", z2, 3), 3).passed());
  const Report bad = check_algebra(as, monoid_algebra("terminal_empty.cat", magma, 3), 3);
  CHECK_FALSE(bad.passed());
}

TEST_CASE("pullback along As -> Com") {
  const ComponentOperad as = associative_operad(3), com = commutative_operad(3);
  OperadMorphism phi;
  phi.color_map = {0};
  for (std::uint32_t g = 0; g < as.seq.element_count(); ++g) {
    const Slot& s = as.seq.slot(as.elem(g).slot);
    phi.element_map.push_back(com.gid({*com.seq.find(s.profile, 0), 0}));
  }
  CHECK(check_operad_morphism(as, com, phi, 3).passed());

  const Monoid z2 = load_monoid("set_z2.alg", "Z2");
  const ComponentOperad com_cat = build_aqft_operad(load_category("terminal_full.cat"), 3).operad;
  const AlgebraPresentation b = monoid_algebra("terminal_full.cat", z2, 3);
  // The category operad with full orthogonality is Com with the same numbering.
  REQUIRE(com_cat.seq.element_count() == com.seq.element_count());
  const AlgebraPresentation a = pullback_algebra(as, com_cat, phi, b, 3);
  CHECK(check_algebra(as, a, 3).passed());

  OperadMorphism collapse = phi;
  for (std::uint32_t g = 0; g < as.seq.element_count(); ++g) collapse.element_map[g] = g;
  CHECK(check_operad_morphism(as, as, collapse, 3).passed());
  const std::uint32_t s2 = *as.seq.find({0, 0}, 0);
  collapse.element_map[as.gid({s2, 1})] = as.gid({s2, 0});
  CHECK_FALSE(check_operad_morphism(as, as, collapse, 3).passed());
  CHECK_THROWS_AS(pullback_algebra(as, as, collapse, a, 3), ValidationError);
}

TEST_CASE("reduced and full algebra checks agree on perturbed products") {
  CheckOptions brute;
  brute.symmetry_reduced = false;
  const ComponentOperad as = build_aqft_operad(load_category("terminal_empty.cat"), 3).operad;
  const Monoid base = load_monoid("mat2_dagger.alg", "Mat2");
  std::mt19937 rng(3);
  int rejected = 0;
  for (int trial = 0; trial < 12; ++trial) {
    Monoid m = base;
    m.products[rng() % m.products.size()][rng() % m.dim()] += 1;
    // Tables built from a product are equivariant, so only associativity can fail.
    const AlgebraPresentation a = monoid_algebra("terminal_empty.cat", m, 3);
    const Report reduced = check_algebra(as, a, 3);
    CHECK(reduced.family_passed("equivariance"));
    CHECK(reduced.passed() == check_algebra(as, a, 3, brute).passed());
    CHECK(reduced.passed() == check_monoid(m).passed());
    rejected += !reduced.passed();
  }
  CHECK(rejected > 0);
}
