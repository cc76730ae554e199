#include <catch2/catch_amalgamated.hpp>

#include "torcert/parse.hpp"
#include "torcert/roots.hpp"

using namespace torcert;

namespace {

ContextQ qctx() {
  return ContextQ(RationalField{}, {"t", "x1", "x2"}, {"t"});
}

PolyQ q(const ContextQ& c, const std::string& s) {
  return parse_polynomial(s, c);
}

}  // namespace

TEST_CASE("perfect powers over the rationals") {
  auto c = qctx();
  auto r = mth_root(q(c, "(x1-x2)^2"), 2, false);
  CHECK(r.root == q(c, "x1 - x2"));
  CHECK(r.unit_is_trivial(c));

  // Reconstruction always holds.
  auto p = q(c, "(2*x1^2 - x2 + 3)^3");
  auto r3 = mth_root(p, 3, false);
  CHECK(r3.root == q(c, "2*x1^2 - x2 + 3"));
  CHECK(r3.root.pow(3) == p);

  // Even root of a square with negative leading coefficient: the canonical
  // root has a positive leading coefficient.
  auto rneg = mth_root(q(c, "(x2-x1)^2"), 2, false);
  CHECK(rneg.root == q(c, "x1 - x2"));

  // Odd root keeps the forced sign.
  CHECK(mth_root(q(c, "-x1^3"), 3, false).root == q(c, "-x1"));

  // Rational leading coefficients.
  CHECK(mth_root(q(c, "4/9*x1^2"), 2, false).root == q(c, "2/3*x1"));
  CHECK_THROWS_AS(mth_root(q(c, "2*x1^2"), 2, false), NotAPower);
  auto rm = mth_root(q(c, "2*x1^2"), 2, true);
  CHECK(rm.root == q(c, "x1"));
  CHECK(rm.unit_constant == Rat(2));
}

TEST_CASE("obstruction witnesses") {
  auto c = qctx();
  bool threw = false;
  try {
    mth_root(q(c, "x1^2 + x2"), 2, false);
  } catch (const NotAPower& e) {
    threw = true;
    CHECK(e.monomial() == "x2");
  }
  CHECK(threw);
  CHECK_THROWS_AS(mth_root(q(c, "x1^3"), 2, false), NotAPower);
  CHECK_THROWS_AS(mth_root(q(c, "0"), 2, false), ZeroInput);
  CHECK_THROWS_AS(mth_root(q(c, "x1"), 1, false), OutOfRange);
}

TEST_CASE("unit parameter policy") {
  auto c = qctx();
  auto p = q(c, "t*(x1+x2)^3");
  auto r = mth_root(p, 3, true);
  CHECK(r.root == q(c, "x1 + x2"));
  CHECK(r.unit_constant == Rat(1));
  CHECK(r.unit_monomial.e == std::vector<unsigned>{1, 0, 0});
  CHECK(r.unit_polynomial(c) * r.root.pow(3) == p);
  CHECK_THROWS_AS(mth_root(p, 3, false), NotAPower);

  // Unit exponents above m split between root and unit.
  auto r4 = mth_root(q(c, "t^4*(x1+x2)^3"), 3, true);
  CHECK(r4.root == q(c, "t*x1 + t*x2"));
  CHECK(r4.unit_monomial.e == std::vector<unsigned>{1, 0, 0});

  // With the flag off, unit parameters behave like ordinary variables.
  CHECK(mth_root(q(c, "t^3"), 3, false).root == q(c, "t"));
}

TEST_CASE("roots over prime fields") {
  PrimeField F7(Int(7));
  ContextP c7(F7, {"x1", "x2"});
  auto p = parse_polynomial("2*x1^2", c7);
  auto r = mth_root(p, 2, false);
  // gamma is the least square root of 2, namely 3.
  CHECK(r.root == parse_polynomial("3*x1", c7));
  CHECK(r.root.pow(2) == p);

  auto sq = parse_polynomial("(x1 + 4*x2)^2", c7);
  auto rs = mth_root(sq, 2, false);
  CHECK(rs.root.pow(2) == sq);
  CHECK_THROWS_AS(mth_root(parse_polynomial("3*x1^2", c7), 2, false),
                  NotAPower);
}

TEST_CASE("Frobenius part when the characteristic divides m") {
  PrimeField F2(Int(2));
  ContextP c2(F2, {"x1", "x2"});
  auto sq = parse_polynomial("x1^2 + x2^2", c2);
  CHECK(mth_root(sq, 2, false).root == parse_polynomial("x1 + x2", c2));

  auto p6 = parse_polynomial("(x1 + x2)^6", c2);
  CHECK(p6.term_count() == 4);  // sixth power in char 2 collapses
  CHECK(mth_root(p6, 6, false).root == parse_polynomial("x1 + x2", c2));

  CHECK_THROWS_AS(mth_root(parse_polynomial("x1^2 + x1*x2", c2), 2, false),
                  NotAPower);

  PrimeField F3(Int(3));
  ContextP c3(F3, {"x1", "x2"});
  auto p9 = parse_polynomial("(2*x1 + x2)^9", c3);
  auto r9 = mth_root(p9, 9, false);
  CHECK(r9.root == parse_polynomial("2*x1 + x2", c3));
}
