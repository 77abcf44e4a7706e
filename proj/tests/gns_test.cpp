#include "aqftop/gns.hpp"
#include "corpus.hpp"
#include "doctest.h"

using namespace aqftop;
using aqftop::testing::load_category;
using aqftop::testing::load_functor;
using aqftop::testing::load_monoid;

namespace {

GaussC I() { return GaussC::i(); }

StatePresentation state(const Monoid& m, Vec omega) { return {m, std::move(omega)}; }

LinMap matrix(std::size_t n, std::vector<GaussC> entries) { return LinMap(n, n, std::move(entries)); }

}  // namespace

TEST_CASE("states") {
  const Monoid c = load_monoid("complex.alg", "C");
  const Monoid cz2 = load_monoid("group_z2.alg", "CZ2");
  CHECK(check_state(state(c, {1})).passed());
  CHECK(check_state(state(cz2, {1, 0})).passed());
  // omega(a*) = i conj(alpha) but conj(omega(a)) = -i conj(alpha).
  CHECK_FALSE(check_state(state(cz2, {I(), 0})).passed());
  CHECK_FALSE(check_state(state(load_monoid("mat2_conj.alg", "Mat2conj"), {1, 0, 0, 0})).passed());
}

TEST_CASE("inner product spaces") {
  CHECK(check_inner_product({LinMap::identity(3)}).passed());
  CHECK(check_inner_product({matrix(2, {0, I(), -I(), 0})}).passed());
  CHECK_FALSE(check_inner_product({matrix(2, {0, 1, 0, 0})}).passed());
  CHECK_FALSE(check_inner_product({matrix(1, {I()})}).passed());
  // Indefinite forms are fine.
  CHECK(check_inner_product({matrix(2, {1, 0, 0, -1})}).passed());
}

TEST_CASE("GNS spaces") {
  const GnsResult one = gns_construct(state(load_monoid("complex.alg", "C"), {1}));
  CHECK(one.space.gram == LinMap::identity(1));
  CHECK(one.space.pair({I()}, {2}) == GaussC(0, -2));

  const GnsResult z2 = gns_construct(state(load_monoid("group_z2.alg", "CZ2"), {1, 0}));
  CHECK(z2.space.gram == LinMap::identity(2));

  const Monoid mat = load_monoid("mat2_dagger.alg", "Mat2");
  const GnsResult m = gns_construct(state(mat, {Rational(1, 2), 0, 0, Rational(1, 2)}));
  // Basis E11 E12 E21 E22 at index 2i + j; trace(E_ij^dagger E_kl)/2.
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) {
      const bool same = a / 2 == b / 2 && a % 2 == b % 2;
      CHECK(m.space.gram(a, b) == (same ? GaussC(Rational(1, 2)) : GaussC(0)));
    }
  CHECK(check_inner_product(m.space).passed());
  CHECK(check_representation(mat, m.space, m.rep).passed());
  CHECK_THROWS_AS(gns_construct(state(load_monoid("group_z2.alg", "CZ2"), {I(), 0})), ValidationError);
}

TEST_CASE("representations") {
  const Monoid c = load_monoid("complex.alg", "C");
  const InnerProductSpace herm{matrix(2, {1, I(), -I(), 3})};
  const Representation scalars{{LinMap::identity(2)}};
  CHECK(check_representation(c, herm, scalars).passed());

  const Monoid cz2 = load_monoid("group_z2.alg", "CZ2");
  const GnsResult z2 = gns_construct(state(cz2, {1, 0}));
  CHECK(check_representation(cz2, z2.space, z2.rep).passed());

  // g acts by the swap P; compatibility with G needs G P = P G (P is real and symmetric).
  const LinMap g = matrix(2, {1, 0, 0, -1});
  const LinMap p = z2.rep.action[1];
  const bool commutes = matmul(g, p) == matmul(p, g);
  CHECK_FALSE(commutes);
  CHECK(check_representation(cz2, {g}, z2.rep).passed() == commutes);
  const LinMap h = matrix(2, {2, 1, 1, 2});
  CHECK(check_representation(cz2, {h}, z2.rep).passed() == (matmul(h, p) == matmul(p, h)));

  // g acting by zero breaks g g = 1.
  CHECK_FALSE(check_representation(cz2, z2.space, {{LinMap::identity(2), LinMap(2, 2)}}).passed());
  CHECK_FALSE(check_representation(cz2, {LinMap::identity(3)}, z2.rep).family_passed("shape"));
}

TEST_CASE("GNS Gram matrices of bundled star algebras are Hermitian") {
  const std::pair<const char*, const char*> cases[] = {
      {"group_z2.alg", "CZ2"}, {"mat2_dagger.alg", "Mat2"}, {"complex.alg", "C"}};
  for (const auto& [file, name] : cases) {
    const Monoid m = load_monoid(file, name);
    // Every real combination of the basis states that passes check_state.
    for (int mask = 1; mask < (1 << m.dim()); ++mask) {
      Vec omega(m.dim());
      for (std::size_t k = 0; k < m.dim(); ++k) omega[k] = (mask >> k) & 1 ? GaussC(Rational(1, 1 + int(k))) : GaussC(0);
      const StatePresentation s = state(m, omega);
      if (!check_state(s).passed()) continue;
      const GnsResult r = gns_construct(s);
      INFO(name << " mask " << mask);
      CHECK(r.space.gram == r.space.gram.conj_transpose());
      CHECK(check_representation(m, r.space, r.rep).passed());
    }
  }
}

TEST_CASE("state families pulled back to the arrow") {
  const OrthCategory arrow = load_category("arrow_perp.cat");
  const FunctorToMon f = load_functor("arrow_perp_central.fun", arrow);
  const ObjId y = arrow.object_index("y"), x = arrow.object_index("x");
  const std::vector<Vec> omegas = pullback_state(f, arrow, y, {Rational(1, 2), 0, 0, Rational(1, 2)});
  // The scalar 1 lands on the identity matrix, whose half trace is 1.
  CHECK(omegas[x] == Vec{1});
  CHECK(check_state_family(f, arrow, omegas).passed());
  std::vector<Vec> off = omegas;
  off[x] = {2};
  CHECK_FALSE(check_state_family(f, arrow, off).passed());
}
