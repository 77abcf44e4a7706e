#include <random>

#include "aqftop/perm.hpp"
#include "doctest.h"

using namespace aqftop;

namespace {

Perm P(std::initializer_list<unsigned> images) { return Perm::one_line(images); }

Perm block_sum_of(std::initializer_list<Perm> parts) {
  const std::vector<Perm> v(parts);
  return block_sum(v);
}

Perm block_perm(const Perm& s, std::initializer_list<std::size_t> lengths) {
  const std::vector<std::size_t> v(lengths);
  return block_permutation(s, v);
}

}  // namespace

TEST_CASE("compose evaluates p after q") {
  CHECK(compose(P({2, 1}), P({2, 1})) == P({1, 2}));
  CHECK(compose(order_reversal(3), order_reversal(3)) == P({1, 2, 3}));
  // (p o p)(1) = p(2) = 3, (p o p)(2) = p(3) = 1, (p o p)(3) = p(1) = 2.
  CHECK(compose(P({2, 3, 1}), P({2, 3, 1})) == P({3, 1, 2}));
  CHECK_THROWS_AS(compose(P({1, 2}), P({1, 2, 3})), ArgumentError);
}

TEST_CASE("construction rejects non-bijections") {
  CHECK_THROWS_AS(P({1, 1}), ArgumentError);
  CHECK_THROWS_AS(P({0, 1}), ArgumentError);
  CHECK_THROWS_AS(P({1, 3}), ArgumentError);
  CHECK(Perm::identity(0).degree() == 0);
  CHECK(P({3, 1, 2}).str() == "[3,1,2]");
}

TEST_CASE("order reversal") {
  CHECK(order_reversal(1) == P({1}));
  CHECK(order_reversal(3) == P({3, 2, 1}));
  CHECK(order_reversal(4) == P({4, 3, 2, 1}));
  for (std::size_t n = 0; n <= 8; ++n) {
    CHECK(compose(order_reversal(n), order_reversal(n)).is_identity());
  }
}

TEST_CASE("block sums act inside consecutive blocks") {
  CHECK(block_sum_of({Perm::identity(2), Perm::identity(3)}) == Perm::identity(5));
  CHECK(block_sum_of({P({2, 1}), P({1})}) == P({2, 1, 3}));
  CHECK(block_sum_of({P({1}), P({2, 1})}) == P({1, 3, 2}));
  CHECK(block_sum(std::vector<Perm>{}).degree() == 0);
}

TEST_CASE("block permutations move whole blocks") {
  CHECK(block_perm(Perm::identity(3), {2, 0, 1}).is_identity());
  CHECK(block_perm(P({2, 1}), {2, 1}) == P({3, 1, 2}));
  CHECK(block_perm(P({2, 1}), {1, 1}) == P({2, 1}));
  CHECK_THROWS_AS(block_perm(P({2, 1}), {1}), ArgumentError);

  // Blocks (a b)(c) become (c)(a b) under the right action.
  const std::vector<char> seq{'a', 'b', 'c'};
  CHECK(act_right(seq, block_perm(P({2, 1}), {2, 1})) == std::vector<char>{'c', 'a', 'b'});
}

TEST_CASE("right action") {
  const std::vector<char> abc{'a', 'b', 'c'};
  CHECK(act_right(abc, Perm::identity(3)) == abc);
  CHECK(act_right(abc, order_reversal(3)) == std::vector<char>{'c', 'b', 'a'});
  CHECK(act_right(std::vector<char>{'a', 'b'}, P({2, 1})) == std::vector<char>{'b', 'a'});
  CHECK_THROWS_AS(act_right(abc, P({2, 1})), ArgumentError);
}

TEST_CASE("group laws hold exhaustively up to degree 5") {
  for (std::size_t n = 0; n <= 5; ++n) {
    const auto& g = all_perms(n);
    CHECK(g.size() == factorial(n));
    const Perm e = Perm::identity(n);
    for (const Perm& p : g) {
      CHECK(compose(p, e) == p);
      CHECK(compose(e, p) == p);
      CHECK(compose(p.inverse(), p) == e);
      CHECK(compose(p, p.inverse()) == e);
    }
    if (n > 4) continue;  // associativity is cubic in the group order
    for (const Perm& p : g)
      for (const Perm& q : g)
        for (const Perm& r : g) REQUIRE(compose(compose(p, q), r) == compose(p, compose(q, r)));
  }
}

TEST_CASE("right action is compatible with composition up to degree 4") {
  for (std::size_t n = 0; n <= 4; ++n) {
    std::vector<int> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = static_cast<int>(10 * i + 7);
    for (const Perm& p : all_perms(n))
      for (const Perm& q : all_perms(n)) {
        REQUIRE(act_right(act_right(c, p), q) == act_right(c, compose(p, q)));
      }
  }
}

TEST_CASE("block calculus degenerations") {
  for (std::size_t m = 0; m <= 4; ++m) {
    const std::vector<std::size_t> ones(m, 1);
    for (const Perm& s : all_perms(m)) CHECK(block_permutation(s, ones) == s);
    std::vector<Perm> ids;
    for (std::size_t k = 0; k < m; ++k) ids.push_back(Perm::identity(k));
    CHECK(block_sum(ids).is_identity());
  }
}

TEST_CASE("block permutations multiply like the outer permutations") {
  // s<L> o t<L s> = (s o t)<L> when lengths are carried along the action.
  std::mt19937 rng(20261014);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t m = rng() % 5;
    std::vector<std::size_t> lengths(m);
    for (auto& l : lengths) l = rng() % 3;
    const auto& g = all_perms(m);
    const Perm& s = g[rng() % g.size()];
    const Perm& t = g[rng() % g.size()];
    const std::vector<std::size_t> moved = act_right(lengths, s);
    CHECK(compose(block_permutation(s, lengths), block_permutation(t, moved)) ==
          block_permutation(compose(s, t), lengths));
  }
}

TEST_CASE("ranks index all_perms and the dense multiplication table agrees") {
  for (std::size_t n = 0; n <= 5; ++n) {
    const auto& g = all_perms(n);
    for (std::size_t r = 0; r < g.size(); ++r) CHECK(perm_rank(g[r]) == r);
    const PermGroup& table = perm_group(n);
    for (std::size_t p = 0; p < g.size(); ++p) {
      CHECK(table.inverse(p) == perm_rank(g[p].inverse()));
      for (std::size_t q = 0; q < g.size(); ++q) {
        REQUIRE(table.compose(p, q) == perm_rank(compose(g[p], g[q])));
      }
    }
  }
}
