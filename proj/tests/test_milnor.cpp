#include <catch2/catch_amalgamated.hpp>

#include "torcert/fields.hpp"
#include "torcert/milnor.hpp"

using namespace torcert;

namespace {
UniversalRelation<RationalField> chain(std::uint64_t m, std::uint64_t n) {
  auto rel = base_relation(RationalField{}, m);
  for (std::uint64_t i = 1; i < n; ++i) rel = propagate_relation(rel);
  return rel;
}
}  // namespace

TEST_CASE("degree-1 seed relation") {
  auto rel = base_relation(RationalField{}, 3);
  REQUIRE(rel.n == 1);
  REQUIRE(rel.s == 1);
  REQUIRE(rel.lambda == 1);
  REQUIRE(rel.rhs.size() == 1);
  CHECK(rel.rhs[0].to_string() == "x1*y1^3");
  CHECK(rel.witnesses.empty());
  CHECK(verify_relation_witnesses(rel));
  bool threw = false;
  try {
    base_relation(RationalField{}, 1);
  } catch (const OutOfRange&) {
    threw = true;
  }
  CHECK(threw);
}

TEST_CASE("propagation to degree 2 and 3") {
  auto r2 = chain(2, 2);
  REQUIRE(r2.n == 2);
  REQUIRE(r2.s == 3);
  REQUIRE(r2.rhs.size() == 2);
  CHECK(r2.rhs[0].to_string() == "x1*y1^2");
  CHECK(r2.rhs[1].to_string() == "-x1*x2*y3^2 + x2*y2^2");
  REQUIRE(r2.witnesses.size() == 1);
  CHECK(r2.witnesses[0].root.to_string() == "y2");
  REQUIRE(r2.witnesses[0].entries.size() == 2);
  CHECK(r2.witnesses[0].entries[0].to_string() == "x1*y3^2");
  CHECK(r2.witnesses[0].entries[1].to_string() == "-x1*y3^2 + y2^2");

  auto r3 = chain(2, 3);
  REQUIRE(r3.n == 3);
  REQUIRE(r3.s == 7);
  CHECK(r3.rhs[0].to_string() == "x1*y1^2");
  CHECK(r3.rhs[1].to_string() == "-x1*x2*y3^2 + x2*y2^2");
  CHECK(r3.rhs[2].to_string() ==
        "x1*x2*x3*y7^2 - x1*x3*y5^2 - x2*x3*y6^2 + x3*y4^2");
  REQUIRE(r3.witnesses.size() == 2);
  CHECK(verify_relation_witnesses(r3));
}

TEST_CASE("witness verification is exact") {
  ContextQ ctx(RationalField{}, {"x1", "x2", "y1"});
  auto x1 = PolyQ::variable(ctx, "x1");
  auto x2 = PolyQ::variable(ctx, "x2");
  auto y1 = PolyQ::variable(ctx, "y1");

  auto good = verify_steinberg_sum<RationalField>(
      {x1 * x1 + x1 * y1, x1 * y1 + y1 * y1}, x1 + y1, 2);
  CHECK(good.pass);
  CHECK(good.difference.is_zero());

  auto bad = verify_steinberg_sum<RationalField>({x1, x2}, y1, 2);
  CHECK_FALSE(bad.pass);
  CHECK(bad.difference.to_string() == "-y1^2 + x1 + x2");

  bool threw = false;
  try {
    verify_steinberg_sum<RationalField>({x1, PolyQ::zero(ctx)}, y1, 2);
  } catch (const ZeroEntry&) {
    threw = true;
  }
  CHECK(threw);
}

TEST_CASE("relation works over a prime field") {
  auto rel = base_relation(PrimeField{Int(5)}, 4);
  rel = propagate_relation(rel);
  rel = propagate_relation(rel);
  REQUIRE(rel.n == 3);
  CHECK(verify_relation_witnesses(rel));
  CHECK(rel.rhs[2].to_string() ==
        "x1*x2*x3*y7^4 + 4*x1*x3*y5^4 + 4*x2*x3*y6^4 + x3*y4^4");
}

TEST_CASE("instantiation maps both sides and guards against zero images") {
  auto rel = chain(2, 2);
  ContextQ target(RationalField{}, {"t", "u1", "u2", "w1", "w2", "w3"}, {"t"});
  std::map<std::string, PolyQ> phi;
  phi.emplace("x1", PolyQ::variable(target, "u1"));
  phi.emplace("x2", PolyQ::variable(target, "u2"));
  phi.emplace("y1", PolyQ::variable(target, "w1"));
  phi.emplace("y2", PolyQ::variable(target, "w2"));
  phi.emplace("y3", PolyQ::variable(target, "w3"));

  auto [lhs, rhs, lambda] = instantiate_relation(rel, target, phi);
  CHECK(lambda == 1);
  REQUIRE(lhs.entries.size() == 2);
  REQUIRE(rhs.entries.size() == 2);
  CHECK(lhs.entries[0].to_string() == "u1");
  CHECK(rhs.entries[0].to_string() == "u1*w1^2");
  CHECK(rhs.entries[1].to_string() == "-u1*u2*w3^2 + u2*w2^2");

  phi.at("x1") = PolyQ::zero(target);
  bool threw = false;
  try {
    instantiate_relation(rel, target, phi);
  } catch (const VanishingImage&) {
    threw = true;
  }
  CHECK(threw);
}

TEST_CASE("kill polynomial assembles the vanishing hypersurface") {
  auto rel = base_relation(RationalField{}, 2);
  ContextQ target(RationalField{}, {"t", "y"}, {"t"});
  auto y = PolyQ::variable(target, "y");
  std::map<std::string, PolyQ> phi;
  phi.emplace("x1", PolyQ::constant(target, Rat(2)));
  phi.emplace("y1", y);

  auto spec = kill_polynomial(rel, target, phi, y + PolyQ::one(target));
  CHECK(spec.equation.to_string() == "-y^2 + 2*y + 1");
  CHECK(spec.param("m") == 2);
  CHECK(spec.param("n") == 1);
  REQUIRE_FALSE(spec.notes.empty());

  SECTION("unit parameters count as constants") {
    std::map<std::string, PolyQ> phit = phi;
    phit.at("x1") = PolyQ::variable(target, "t");
    auto tspec = kill_polynomial(rel, target, phit, y + PolyQ::one(target));
    CHECK(tspec.equation.to_string() == "-t*y^2 + y^2 + 2*y + 1");
  }
  SECTION("non-constant images of the left side are rejected") {
    std::map<std::string, PolyQ> bad = phi;
    bad.at("x1") = y;
    bool threw = false;
    try {
      kill_polynomial(rel, target, bad, y + PolyQ::one(target));
    } catch (const OutOfRange&) {
      threw = true;
    }
    CHECK(threw);
  }
  SECTION("equation dividing an entry image is rejected") {
    bool threw = false;
    try {
      kill_polynomial(rel, target, phi, y + y);
    } catch (const EquationDividesEntry&) {
      threw = true;
    }
    CHECK(threw);
  }
  SECTION("identically zero equation is rejected") {
    std::map<std::string, PolyQ> one = phi;
    one.at("x1") = PolyQ::one(target);
    bool threw = false;
    try {
      kill_polynomial(rel, target, one, y);
    } catch (const ZeroInput&) {
      threw = true;
    }
    CHECK(threw);
  }
}

TEST_CASE("relation serialization round-trips") {
  auto rel = chain(3, 3);
  std::string text = serialize_relation(rel);
  CHECK(text.rfind("relation m=3 n=3 s=7 lambda=1\n", 0) == 0);
  auto back = parse_relation(text, RationalField{});
  REQUIRE(back.rhs.size() == rel.rhs.size());
  for (std::size_t i = 0; i < rel.rhs.size(); ++i)
    CHECK(back.rhs[i] == rel.rhs[i]);
  REQUIRE(back.witnesses.size() == rel.witnesses.size());
  for (std::size_t i = 0; i < rel.witnesses.size(); ++i) {
    CHECK(back.witnesses[i].root == rel.witnesses[i].root);
    REQUIRE(back.witnesses[i].entries.size() == rel.witnesses[i].entries.size());
    for (std::size_t j = 0; j < rel.witnesses[i].entries.size(); ++j)
      CHECK(back.witnesses[i].entries[j] == rel.witnesses[i].entries[j]);
  }
  CHECK(verify_relation_witnesses(back));
  CHECK(serialize_relation(back) == text);

  bool threw = false;
  try {
    parse_relation("nonsense\n", RationalField{});
  } catch (const SyntaxError&) {
    threw = true;
  }
  CHECK(threw);
}
