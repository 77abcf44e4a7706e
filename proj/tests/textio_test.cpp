#include "aqftop/textio.hpp"
#include "corpus.hpp"
#include "doctest.h"

using namespace aqftop;
using aqftop::testing::corpus_path;

namespace {

std::string parse_error_of(const std::string& text) {
  try {
    parse_category(text, "in.cat");
  } catch (const ParseError& e) {
    return e.what();
  }
  return {};
}

std::string algebra_error_of(const std::string& text) {
  try {
    parse_algebra(text, "in.alg", ".");
  } catch (const ParseError& e) {
    return e.what();
  }
  return {};
}

SourceText text(const std::string& s) { return {s, "v", 1, 1}; }

}  // namespace

TEST_CASE("category files") {
  const CategoryData d = parse_category(
      "# comment\n"
      "category sq\n"
      "objects a b c\n"
      "morphism f : a -> b   # trailing comment\n"
      "morphism h : b -> c\n"
      "morphism u : a -> c\n"
      "compose f h = u\n"
      "orth u u\n",
      "sq.cat");
  CHECK(d.name == "sq");
  CHECK(d.objects == std::vector<std::string>{"a", "b", "c"});
  REQUIRE(d.morphisms.size() == 3);
  CHECK(d.morphisms[1].source == "b");
  REQUIRE(d.compositions.size() == 1);
  CHECK(d.compositions[0].then == "h");
  CHECK(d.compositions[0].result == "u");
  CHECK(d.orth == std::vector<std::pair<std::string, std::string>>{{"u", "u"}});
  CHECK(d.orth_generators);
  CHECK_NOTHROW(validate_category(d));
}

TEST_CASE("syntax errors carry line and column") {
  try {
    read_category_file(corpus_path("invalid/bad_syntax.cat"));
    FAIL("accepted");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 12);
    CHECK(std::string(e.what()).ends_with(":3:12: expected ':', found 'x'"));
  }
  CHECK(parse_error_of("objects x\nfrobnicate x\n").starts_with("in.cat:2:1:"));
  CHECK_FALSE(parse_error_of("objects x\nmorphism g : x ->\n").empty());
  CHECK_FALSE(parse_error_of("orthogonality sometimes\n").empty());
  CHECK(parse_error_of("objects x\n").ends_with("missing 'category' line"));
  CHECK(parse_error_of("category c\nobjects x\n").empty());
}

TEST_CASE("scalars and vectors") {
  CHECK(parse_scalar("3/6") == GaussC(Rational(1, 2)));
  CHECK(parse_scalar("-i") == GaussC(0, -1));
  CHECK(parse_scalar("1/2+3i") == GaussC(Rational(1, 2), 3));
  CHECK(parse_scalar(" 2 i ") == GaussC(0, 2));
  CHECK_THROWS_AS(parse_scalar("1/0"), ArgumentError);
  CHECK_THROWS_AS(parse_scalar("x"), ArgumentError);

  const std::vector<std::string> basis{"e", "g"};
  CHECK(parse_vector(text("e"), basis) == Vec{1, 0});
  CHECK(parse_vector(text("0"), basis) == Vec{0, 0});
  CHECK(parse_vector(text("e + 2 g"), basis) == Vec{1, 2});
  CHECK(parse_vector(text("1/2i e - g"), basis) == Vec{GaussC(0, Rational(1, 2)), -1});
  CHECK(parse_vector(text("(1+i) g + g"), basis) == Vec{0, GaussC(2, 1)});
  CHECK_THROWS_AS(parse_vector(text("h"), basis), ParseError);
}

TEST_CASE("algebra files") {
  const AlgebraFile f = read_algebra_file(corpus_path("group_z2.alg"));
  REQUIRE(f.monoids.size() == 1);
  const Monoid& m = f.monoids[0];
  CHECK(m.basis == std::vector<std::string>{"e", "g"});
  CHECK(m.unit == Vec{1, 0});
  CHECK(m.products[3] == Vec{1, 0});
  REQUIRE(m.star.has_value());
  CHECK(m.star->antilinear());
  REQUIRE(f.find_state("tau"));
  CHECK(f.find_state("tau")->state.omega == Vec{1, 0});

  const AlgebraFile set = read_algebra_file(corpus_path("set_z2.alg"));
  CHECK(set.monoids[0].mode == CarrierMode::Set);

  // Omitted products are zero in vector mode.
  const AlgebraFile sparse = parse_algebra("monoid N\n basis e n\n unit e\n product e e = e\n"
                                           " product e n = n\n product n e = n\nend\n",
                                           "n.alg", ".");
  CHECK(sparse.monoids[0].products[3] == Vec{0, 0});
  CHECK(check_monoid(sparse.monoids[0]).passed());

  const AlgebraFile lin = parse_algebra("monoid L\n basis e\n unit e\n product e e = e\n star e = e\n"
                                        " involution linear\nend\n",
                                        "l.alg", ".");
  CHECK_FALSE(lin.monoids[0].star->antilinear());

  // Functors import monoids relative to their own file.
  const AlgebraFile fun = read_algebra_file(corpus_path("arrow_perp_central.fun"));
  CHECK(fun.monoids.size() == 2);
  REQUIRE(fun.maps.size() == 1);
  CHECK(fun.maps[0].morphism == "g");
}

TEST_CASE("algebra file errors") {
  CHECK(algebra_error_of("monoid M\n basis e\n unit f\nend\n").starts_with("in.alg:3:"));
  CHECK_FALSE(algebra_error_of("monoid M\n basis e\n").empty());
  CHECK_THROWS_AS(parse_algebra("import missing.alg\n", "in.alg", "."), Error);
  CHECK_FALSE(algebra_error_of("state s on Nothing\n e = 1\nend\n").empty());
  CHECK_FALSE(algebra_error_of("monoid S set\n basis a b\n unit a\n product a b = a + b\nend\n").empty());

  const OrthCategory pt = validate_category(parse_category("category pt\nobjects p\n", "pt.cat"));
  const AlgebraFile two = parse_algebra("monoid A\n basis e\n unit e\n product e e = e\nend\n"
                                        "monoid B\n basis e\n unit e\n product e e = e\nend\n",
                                        "ab.alg", ".");
  CHECK_THROWS_AS(resolve_functor(two, pt), ValidationError);
  const AlgebraFile unknown = parse_algebra("monoid A\n basis e\n unit e\n product e e = e\nend\n"
                                            "assign q A\n",
                                            "q.alg", ".");
  CHECK_THROWS_AS(resolve_functor(unknown, pt), ParseError);
}
