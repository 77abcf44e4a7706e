#include <random>

#include "aqftop/aqft.hpp"
#include "corpus.hpp"
#include "doctest.h"

using namespace aqftop;
using aqftop::testing::bundled_categories;
using aqftop::testing::load_category;
using aqftop::testing::load_functor;
using aqftop::testing::load_monoid;

namespace {

GaussC I() { return GaussC::i(); }

/// Every monoid shipped with the corpus, valid or not as a star monoid.
std::vector<Monoid> bundled_monoids() {
  return {load_monoid("complex.alg", "C"), load_monoid("group_z2.alg", "CZ2"),
          load_monoid("mat2_dagger.alg", "Mat2"), load_monoid("mat2_conj.alg", "Mat2conj"),
          load_monoid("set_z2.alg", "Z2")};
}

FunctorToMon constant(const Monoid& m) {
  FunctorToMon f;
  f.objects = {m};
  f.morphisms = {LinMap::identity(m.dim())};
  return f;
}

struct StarAs {
  AqftOperad reverse, identity;
};

const StarAs& star_as() {
  static const StarAs ops = [] {
    const AqftOperad as = build_aqft_operad(load_category("terminal_empty.cat"), 4);
    return StarAs{attach_star(as, StarVariant::Reverse), attach_star(as, StarVariant::Identity)};
  }();
  return ops;
}

bool star_algebra_over(const AqftOperad& op, const Monoid& m) {
  return check_star_algebra(op.operad, algebra_from_functor(constant(m), op), 3).passed();
}

}  // namespace

TEST_CASE("star objects") {
  CHECK(check_star_object({CarrierMode::Set, LinMap::identity(3)}).passed());
  CHECK(check_star_object({CarrierMode::Vec, LinMap::conjugation(3)}).passed());
  // conj(diag(i, 1)) diag(i, 1) = diag(1, 1).
  CHECK(check_star_object({CarrierMode::Vec, LinMap(2, 2, {I(), 0, 0, 1}, true)}).passed());
  CHECK_FALSE(check_star_object({CarrierMode::Vec, LinMap(2, 2, {2, 0, 0, 1}, true)}).passed());
  CHECK_FALSE(check_star_object({CarrierMode::Set, LinMap(2, 2, {0, 1, 0, 0})}).passed());
}

TEST_CASE("star monoids and the two flavors") {
  const Monoid c = load_monoid("complex.alg", "C");
  CHECK(check_star_monoid(c, Flavor::Nonreversing).passed());
  CHECK(check_star_monoid(c, Flavor::Reversing).passed());

  const Monoid dagger = load_monoid("mat2_dagger.alg", "Mat2");
  CHECK(check_star_monoid(dagger, Flavor::Reversing).passed());
  const Report d = check_star_monoid(dagger, Flavor::Nonreversing);
  CHECK_FALSE(d.passed());
  CHECK(d.find("star-multiplicative")->witness.find("E1") != std::string::npos);

  const Monoid conj = load_monoid("mat2_conj.alg", "Mat2conj");
  CHECK(check_star_monoid(conj, Flavor::Nonreversing).passed());
  CHECK_FALSE(check_star_monoid(conj, Flavor::Reversing).passed());

  const Report magma = check_star_monoid(load_monoid("invalid/magma.alg", "Magma"), Flavor::Reversing);
  CHECK_FALSE(magma.family_passed("associativity"));
}

TEST_CASE("commutative carriers do not see the flavor") {
  for (const Monoid& m : bundled_monoids()) {
    bool commutative = true;
    for (std::size_t a = 0; a < m.dim(); ++a)
      for (std::size_t b = 0; b < m.dim(); ++b) {
        commutative = commutative && m.products[a * m.dim() + b] == m.products[b * m.dim() + a];
      }
    if (!commutative) continue;
    INFO(m.name);
    CHECK(check_star_monoid(m, Flavor::Nonreversing).passed() ==
          check_star_monoid(m, Flavor::Reversing).passed());
  }
}

TEST_CASE("star operads") {
  CHECK(check_star_operad(star_as().reverse.operad, 4).passed());
  CHECK(check_star_operad(star_as().identity.operad, 4).passed());

  ComponentOperad com = commutative_operad(4);
  com.star = std::vector<std::uint32_t>(com.seq.element_count());
  for (std::uint32_t g = 0; g < com.star->size(); ++g) (*com.star)[g] = g;
  CHECK(check_star_operad(com, 4).passed());

  // Reversal in arity 2 only.
  ComponentOperad partial = star_as().reverse.operad;
  for (std::uint32_t g = 0; g < partial.seq.element_count(); ++g) {
    if (partial.seq.slot(partial.elem(g).slot).arity() != 2) (*partial.star)[g] = g;
  }
  const Report r = check_star_operad(partial, 4);
  CHECK_FALSE(r.passed());
  CHECK_FALSE(r.family_passed("gamma"));
  CHECK_FALSE(r.find("gamma")->witness.empty());
}

TEST_CASE("star algebras over As") {
  const Monoid dagger = load_monoid("mat2_dagger.alg", "Mat2");
  const Monoid conj = load_monoid("mat2_conj.alg", "Mat2conj");
  CHECK(star_algebra_over(star_as().reverse, dagger));
  CHECK(star_algebra_over(star_as().identity, conj));
  CHECK_FALSE(star_algebra_over(star_as().reverse, conj));
  CHECK_FALSE(star_algebra_over(star_as().identity, dagger));
}

TEST_CASE("star algebras over As are star monoids of the matching flavor") {
  for (const Monoid& m : bundled_monoids()) {
    INFO(m.name);
    CHECK(star_algebra_over(star_as().reverse, m) == check_star_monoid(m, Flavor::Reversing).passed());
    CHECK(star_algebra_over(star_as().identity, m) ==
          check_star_monoid(m, Flavor::Nonreversing).passed());
  }
}

TEST_CASE("star functors") {
  const Monoid dagger = load_monoid("mat2_dagger.alg", "Mat2");
  CHECK(check_star_functor(constant(dagger), load_category("terminal_empty.cat")).passed());

  const OrthCategory arrow = load_category("arrow_perp.cat");
  FunctorToMon f = load_functor("arrow_perp_central.fun", arrow);
  CHECK(check_functor(f, arrow).passed());
  CHECK(check_star_functor(f, arrow).passed());

  const ObjId y = arrow.object_index("y");
  f.objects[y].star = LinMap::identity(4);
  const Report r = check_star_functor(f, arrow);
  CHECK_FALSE(r.passed());
}

TEST_CASE("one flipped star image or matrix entry is detected") {
  std::mt19937 rng(5);
  for (const Monoid& m : {load_monoid("mat2_dagger.alg", "Mat2"), load_monoid("group_z2.alg", "CZ2")}) {
    const Flavor fl = Flavor::Reversing;
    REQUIRE(check_star_monoid(m, fl).passed());
    for (std::size_t r = 0; r < m.dim(); ++r)
      for (std::size_t c = 0; c < m.dim(); ++c) {
        Monoid bad = m;
        (*bad.star)(r, c) += 1;
        CHECK_FALSE(check_star_monoid(bad, fl).passed());
      }
  }
  // Star operads: moving one image within its slot.
  const ComponentOperad& op = star_as().reverse.operad;
  int tried = 0;
  for (std::uint32_t g = 0; g < op.seq.element_count(); ++g) {
    const ElemRef e = op.elem(g);
    const std::size_t size = op.seq.slot(e.slot).size();
    if (size < 2 || op.seq.slot(e.slot).arity() > 3) continue;
    ComponentOperad bad = op;
    const auto other = static_cast<std::uint32_t>(((*op.star)[g] - op.gid({e.slot, 0}) + 1 + rng() % (size - 1)) % size);
    (*bad.star)[g] = op.gid({e.slot, other});
    CHECK_FALSE(check_star_operad(bad, 3).passed());
    ++tried;
  }
  CHECK(tried == 2 + 6);
}

TEST_CASE("both star variants on every bundled category") {
  for (const std::string& name : bundled_categories()) {
    INFO(name);
    const AqftOperad op = build_aqft_operad(load_category(name), 3);
    CHECK(check_star_operad(attach_star(op, StarVariant::Reverse).operad, 3).passed());
    CHECK(check_star_operad(attach_star(op, StarVariant::Identity).operad, 3).passed());
  }
}
