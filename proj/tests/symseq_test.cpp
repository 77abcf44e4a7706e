#include <map>

#include "aqftop/symseq.hpp"
#include "doctest.h"

using namespace aqftop;

namespace {

const std::vector<std::string> kOne{"*"};
const std::vector<std::string> kTwo{"x", "y"};

/// Slot n = S_n for 1 <= n <= top, the positive part of the associative data.
SymSeqSet as_data(std::size_t top) {
  std::vector<OrbitSpec> orbits;
  for (std::size_t n = 1; n <= top; ++n) orbits.push_back({Profile(n, 0), 0, true, "a" + std::to_string(n)});
  return orbit_sequence(kOne, orbits);
}

std::size_t size_of(const SymSeqSet& x, const Profile& c, Color t) {
  const auto s = x.find(c, t);
  return s ? x.slot(*s).size() : 0;
}

std::map<std::pair<Profile, Color>, std::size_t> cardinalities(const SymSeqSet& x) {
  std::map<std::pair<Profile, Color>, std::size_t> out;
  for (std::uint32_t s = 0; s < x.slot_count(); ++s) {
    if (x.slot(s).size()) out[{x.slot(s).profile, x.slot(s).target}] = x.slot(s).size();
  }
  return out;
}

SymSeqSet two_color_sample() {
  return orbit_sequence(kTwo, {{{0, 1}, 0, true, "g"},
                               {{1}, 0, true, "h"},
                               {{}, 1, true, "z"},
                               {{0, 0}, 1, false, "k"},
                               {{1, 0, 1}, 0, true, "q"}});
}

std::uint64_t fact(unsigned n) { return n < 2 ? 1 : n * fact(n - 1); }

}  // namespace

TEST_CASE("circle unit") {
  const SymSeqSet one = circle_unit(kOne);
  CHECK(size_of(one, {0}, 0) == 1);
  CHECK(size_of(one, {}, 0) == 0);
  CHECK(size_of(one, {0, 0}, 0) == 0);
  const SymSeqSet two = circle_unit(kTwo);
  CHECK(size_of(two, {0}, 0) == 1);
  CHECK(size_of(two, {1}, 1) == 1);
  CHECK(size_of(two, {0}, 1) == 0);
  CHECK_THROWS_AS(circle_unit({}), ArgumentError);
}

TEST_CASE("orbit sequences have functorial actions") {
  CHECK(check_action(as_data(4)).passed());
  CHECK(check_action(two_color_sample()).passed());
  const SymSeqSet x = two_color_sample();
  CHECK(size_of(x, {0, 1}, 0) == 1);
  CHECK(size_of(x, {1, 0}, 0) == 1);
  CHECK(size_of(x, {0, 0}, 1) == 1);
  CHECK(size_of(x, {1, 0, 1}, 0) == 2);
}

TEST_CASE("a broken action table is reported") {
  SymSeqSet x = as_data(3);
  const std::uint32_t s = *x.find({0, 0, 0}, 0);
  Slot& sl = x.mutable_slot(s);
  std::swap(sl.action[3 * sl.size() + 1], sl.action[3 * sl.size() + 2]);
  const Report r = check_action(x);
  CHECK_FALSE(r.passed());
  CHECK_FALSE(r.family_passed("action-composition"));
}

TEST_CASE("the circle unit is a two-sided unit on cardinalities") {
  for (const SymSeqSet& x : {as_data(4), two_color_sample()}) {
    const SymSeqSet unit = circle_unit(x.colors());
    const auto expect = cardinalities(x);
    CHECK(cardinalities(circle_product(x, unit, 4).seq) == expect);
    CHECK(cardinalities(circle_product(unit, x, 4).seq) == expect);
  }
}

TEST_CASE("associative data composed with itself") {
  const CoendResult r = circle_product(as_data(3), as_data(3), 3);
  // Ordered splittings of n into blocks times orderings: n! 2^(n-1).
  for (unsigned n = 1; n <= 3; ++n) {
    CHECK(size_of(r.seq, Profile(n, 0), 0) == fact(n) << (n - 1));
  }
  CHECK(size_of(r.seq, Profile(2, 0), 0) == 4);
  CHECK(check_action(r.seq).passed());
}

TEST_CASE("the induced action on products is functorial up to length 4") {
  const SymSeqSet x = two_color_sample();
  const CoendResult r = circle_product(x, x, 4);
  CHECK(check_action(r.seq).passed());
  CHECK(check_action(circle_product(as_data(2), as_data(2), 4).seq).passed());
}

TEST_CASE("empty factors and mismatched colors") {
  const SymSeqSet empty(kOne);
  CHECK(circle_product(empty, as_data(2), 3).seq.element_count() == 0);
  CHECK_THROWS_AS(circle_product(as_data(2), circle_unit(kTwo), 3), ArgumentError);
}

TEST_CASE("cardinalities do not depend on the labelling") {
  const SymSeqSet x = two_color_sample();
  const SymSeqSet relabelled = orbit_sequence(kTwo, {{{1, 0, 1}, 0, true, "Q"},
                                                     {{0, 0}, 1, false, "K"},
                                                     {{}, 1, true, "Z"},
                                                     {{1}, 0, true, "H"},
                                                     {{0, 1}, 0, true, "G"}});
  CHECK(cardinalities(circle_product(x, x, 3).seq) ==
        cardinalities(circle_product(relabelled, relabelled, 3).seq));
}

TEST_CASE("products are deterministic") {
  const SymSeqSet x = two_color_sample();
  CHECK(circle_product(x, x, 3).seq.dump() == circle_product(x, x, 3).seq.dump());
}

TEST_CASE("pullback along color maps") {
  const SymSeqSet x = two_color_sample();
  const PullbackResult same = pullback({0, 1}, kTwo, x);
  CHECK(cardinalities(same.seq) == cardinalities(x));

  // Collapse {x, y} -> {*}: each source slot of length n copies the length-n target slot.
  const SymSeqSet y = as_data(3);
  const PullbackResult back = pullback({0, 0}, kTwo, y);
  for (std::size_t n = 1; n <= 3; ++n) {
    for (const Profile& c : [&] {
           std::vector<Profile> all;
           for (std::size_t k = 0; k < (1u << n); ++k) {
             Profile p(n);
             for (std::size_t i = 0; i < n; ++i) p[i] = (k >> i) & 1;
             all.push_back(p);
           }
           return all;
         }()) {
      for (Color t = 0; t < 2; ++t) CHECK(size_of(back.seq, c, t) == fact(n));
    }
  }
  CHECK(check_action(back.seq).passed());
}

TEST_CASE("left Kan extension along the identity is a bijection") {
  const SymSeqSet x = two_color_sample();
  const KanResult k = left_kan({0, 1}, kTwo, x);
  CHECK(cardinalities(k.seq) == cardinalities(x));
  CHECK(check_action(k.seq).passed());
}

TEST_CASE("the unit of the color change separates orbits of free actions") {
  // Two free orbits over different profiles that collapse to the same one.
  const SymSeqSet x = orbit_sequence(kTwo, {{{0, 1}, 0, true, "g"}, {{1, 1}, 0, true, "k"}});
  const KanResult k = left_kan({0, 0}, kOne, x);
  CHECK(size_of(k.seq, {0, 0}, 0) == 4);
  std::map<ElemRef, int> hits;
  for (std::uint32_t s = 0; s < x.slot_count(); ++s) {
    const Slot& sl = x.slot(s);
    for (std::uint32_t e = 0; e < sl.size(); ++e) {
      const auto img = k.classify({sl.target, sl.profile, e, Perm::identity(sl.arity())});
      REQUIRE(img.has_value());
      ++hits[*img];
    }
  }
  CHECK(hits.size() == 4);
  for (const auto& [e, n] : hits) CHECK(n == 1);
}

TEST_CASE("triangle identities and the lax structure on bundled instances") {
  for (const KanInstance& k : bundled_kan_instances()) {
    INFO(k.name);
    CHECK(check_kan_adjunction(k.f, k.source_colors, k.target_colors, k.x, k.y).passed());
    CHECK(check_pullback_monoidal(k.f, k.source_colors, k.y, k.y, 3).passed());
  }
}
