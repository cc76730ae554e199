#include <catch2/catch_amalgamated.hpp>

#include "torcert/fields.hpp"
#include "torcert/parse.hpp"
#include "torcert/twisting.hpp"

using namespace torcert;

namespace {
ContextQ coords(std::uint64_t n) {
  std::vector<std::string> names{"t"};
  for (std::uint64_t i = 0; i <= n; ++i)
    names.push_back("x" + std::to_string(i));
  return ContextQ(RationalField{}, names, {"t"});
}
}  // namespace

TEST_CASE("proof polynomial layout") {
  auto ctx = coords(2);
  auto g = make_proof_g(ctx, 2, 2);
  CHECK(g == parse_polynomial("t*(x0^2+x1^2+x2^2)^2 - x0^2*x1*x2", ctx));
  CHECK(g.degree() == 4);
  CHECK(g.is_homogeneous());

  auto g3 = make_proof_g(coords(3), 2, 3);
  CHECK(g3.degree() == 4);
  CHECK(g3.coefficient_of(
              parse_polynomial("x0*x1*x2*x3", coords(3)).leading_term().mono) ==
        Rat(1));  // -(-1)^3 = +1

  bool threw = false;
  try {
    ContextQ plain(RationalField{}, {"t", "x0", "x1"});
    make_proof_g(plain, 2, 1);
  } catch (const NotAUnitParam&) {
    threw = true;
  }
  CHECK(threw);
}

TEST_CASE("unit-twisted inputs pass exactly when units count as powers") {
  for (std::uint64_t m : {2, 3}) {
    for (std::uint64_t n = 2; n <= 3; ++n) {
      auto ctx = coords(n);
      auto g = make_proof_g(ctx, m, n);
      INFO("m=" << m << " n=" << n);

      auto pass = is_twisting_type(g, m, true);
      CHECK(pass.verdict);
      CHECK(pass.degree_divisible);
      REQUIRE(pass.checks.size() == n + 1);
      for (const auto& c : pass.checks) {
        CHECK(c.has_pure_power);
        CHECK(c.pure_coefficient.to_string() == "t");
        CHECK(c.root_found);
      }

      auto fail = is_twisting_type(g, m, false);
      CHECK_FALSE(fail.verdict);
      bool saw_t = false;
      for (const auto& c : fail.checks)
        if (c.obstruction.find('t') != std::string::npos) saw_t = true;
      CHECK(saw_t);
    }
  }
}

TEST_CASE("obstruction names the unit-carrying monomial") {
  auto ctx = coords(2);
  auto g = make_proof_g(ctx, 2, 2);
  auto fail = is_twisting_type(g, 2, false);
  REQUIRE(fail.checks.size() == 3);
  CHECK(fail.checks[0].var == "x0");
  CHECK(fail.checks[0].obstruction == "t*x1^4");
}

TEST_CASE("deleting a pure power flips the verdict") {
  for (std::uint64_t n = 2; n <= 4; ++n) {
    auto ctx = coords(n);
    auto g = make_proof_g(ctx, 2, n);
    const long long d = g.degree();
    for (std::uint64_t i = 0; i <= n; ++i) {
      Monomial pure = Monomial::unit(ctx.size());
      pure.e[ctx.index_of("t")] = 1;
      pure.e[ctx.index_of("x" + std::to_string(i))] =
          static_cast<unsigned>(d);
      auto coeff = g.coefficient_of(pure);
      REQUIRE_FALSE(ctx.field().is_zero(coeff));
      auto mutated = g - PolyQ::from_terms(ctx, {{pure, coeff}});
      INFO("n=" << n << " i=" << i);
      CHECK_FALSE(is_twisting_type(mutated, 2, true).verdict);
    }
  }
}

TEST_CASE("degree divisibility is reported") {
  ContextQ ctx(RationalField{}, {"x0", "x1"});
  auto g = parse_polynomial("x0 + x1", ctx);
  auto rep = is_twisting_type(g, 2, true);
  CHECK_FALSE(rep.degree_divisible);
  CHECK_FALSE(rep.verdict);
}

TEST_CASE("non-homogeneous input is homogenized first") {
  ContextQ ctx(RationalField{}, {"x0", "x1", "x2"});
  auto p = parse_polynomial("x1^2 + x2", ctx);
  auto rep = is_twisting_type(p, 2, true);
  CHECK(rep.input == parse_polynomial("x1^2 + x0*x2", ctx));
}

TEST_CASE("seeded construction and its guards") {
  ContextQ ctx(RationalField{}, {"x0", "x1", "x2"});
  auto G = parse_polynomial("x0^2 + x1^2 + x2^2", ctx);
  auto g = make_twisting_g(G, 2);
  CHECK(g == parse_polynomial("(x0^2+x1^2+x2^2)^2 + x0^2*x1*x2", ctx));
  auto rep = is_twisting_type(g, 2, false);
  CHECK(rep.verdict);  // no unit factors involved, strict roots exist

  SECTION("missing pure power is named") {
    bool threw = false;
    try {
      make_twisting_g(parse_polynomial("x0^2 + x1^2", ctx), 2);
    } catch (const MissingPurePower& ex) {
      threw = true;
      CHECK(ex.variable() == "x2");
    }
    CHECK(threw);
  }
  SECTION("degree threshold") {
    ContextQ big(RationalField{}, {"x0", "x1", "x2", "x3"});
    bool threw = false;
    try {
      make_twisting_g(parse_polynomial("x0+x1+x2+x3", big), 2);
    } catch (const DegreeTooSmall&) {
      threw = true;
    }
    CHECK(threw);
  }
  SECTION("inhomogeneous seeds are rejected") {
    bool threw = false;
    try {
      make_twisting_g(parse_polynomial("x0^2 + x1", ctx), 2);
    } catch (const NotHomogeneous&) {
      threw = true;
    }
    CHECK(threw);
  }
}
