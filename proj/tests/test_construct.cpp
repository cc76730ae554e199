#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "torcert/construct.hpp"
#include "torcert/parse.hpp"

using namespace torcert;

TEST_CASE("pencil member in the smallest dimension") {
  auto spec = pencil_member(RationalField{}, 3, 4, 2);
  CHECK(spec.equation.to_string() ==
        "t*x0^4 + 2*t*x0^2*x1^2 + 2*t*x0^2*x2^2 + t*x1^4 + 2*t*x1^2*x2^2 + "
        "t*x2^4 - x0^2*x1*x2 - x0*x1*y1^2 + x1*x2*y2^2");
  CHECK(spec.param("n") == 2);
  CHECK(spec.param("r") == 1);
  CHECK(spec.param("extra_exponent") == 0);
  CHECK(spec.equation.is_homogeneous());
  CHECK(spec.equation.degree() == 4);

  auto spec6 = pencil_member(RationalField{}, 3, 6, 2);
  CHECK(spec6.param("extra_exponent") == 2);
  CHECK(spec6.equation == spec.equation);  // member itself is degree m+n

  bool threw = false;
  try {
    pencil_member(RationalField{}, 3, 3, 2);
  } catch (const DegreeTooSmall&) {
    threw = true;
  }
  CHECK(threw);
  threw = false;
  try {
    pencil_member(PrimeField{Int(2)}, 3, 4, 2);
  } catch (const CharDividesM&) {
    threw = true;
  }
  CHECK(threw);
}

TEST_CASE("pencil members across a small grid") {
  for (std::uint64_t m : {2, 3}) {
    for (std::uint64_t N = 3; N <= 8; ++N) {
      auto split = dimension_split(N);
      auto spec = pencil_member(RationalField{}, N, m + split.n, m);
      INFO("m=" << m << " N=" << N);
      CHECK(spec.equation.is_homogeneous());
      CHECK(spec.equation.degree() ==
            static_cast<long long>(m + split.n));
      // the closing coefficient of y_{r+1}^m is (-1)^n x1...xn
      Monomial close = Monomial::unit(spec.ctx.size());
      close.e[spec.ctx.index_of("y" + std::to_string(split.r + 1))] =
          static_cast<unsigned>(m);
      for (std::uint64_t i = 1; i <= split.n; ++i)
        close.e[spec.ctx.index_of("x" + std::to_string(i))] = 1;
      auto c = spec.equation.coefficient_of(close);
      CHECK(c == (split.n % 2 == 0 ? Rat(1) : Rat(-1)));
    }
  }
}

TEST_CASE("bundle model and its exceptional fiber") {
  auto model = bundle_model(RationalField{}, 3, 2);
  const auto& ctx = model.spec.ctx;
  CHECK(model.exceptional_fiber ==
        parse_polynomial("-x1*z1^2 + x1*x2*z2^2", ctx));

  std::map<std::string, PolyQ> x0_one;
  x0_one.emplace("x0", PolyQ::one(ctx));
  std::map<std::string, PolyQ> z0_zero;
  z0_zero.emplace("z0", PolyQ::zero(ctx));
  CHECK(model.generic_fiber == model.spec.equation.substitute(ctx, x0_one));
  CHECK(model.exceptional_fiber ==
        model.spec.equation.substitute(ctx, z0_zero).substitute(ctx, x0_one));
}

TEST_CASE("exceptional fiber embeds into the diagonal hypersurface") {
  for (std::uint64_t m : {2, 3}) {
    for (std::uint64_t N = 3; N <= 7; ++N) {
      auto split = dimension_split(N);
      auto model = bundle_model(RationalField{}, N, m);
      INFO("m=" << m << " N=" << N);

      std::vector<std::string> names;
      std::vector<PolyQ> chi;
      for (std::uint64_t i = 1; i <= split.n; ++i)
        names.push_back("x" + std::to_string(i));
      for (std::uint64_t j = 0; j < (std::uint64_t{1} << split.n); ++j)
        names.push_back("y" + std::to_string(j));
      ContextQ target(RationalField{}, names);
      for (std::uint64_t i = 1; i <= split.n; ++i)
        chi.push_back(PolyQ::variable(target, "x" + std::to_string(i)));
      auto big = pfister_hypersurface<RationalField>(m, chi);

      std::map<std::string, PolyQ> window;
      for (std::uint64_t j = 1; j <= split.r; ++j)
        window.emplace("z" + std::to_string(j),
                       PolyQ::variable(target, "y" + std::to_string(j)));
      window.emplace(
          "z" + std::to_string(split.r + 1),
          PolyQ::variable(target, "y" + std::to_string(
                                            (std::uint64_t{1} << split.n) - 1)));
      auto image = model.exceptional_fiber.substitute(target, window);
      REQUIRE_FALSE(image.is_zero());
      for (const auto& term : image.terms())
        CHECK(big.equation.coefficient_of(term.mono) == term.coeff);
    }
  }
}

TEST_CASE("special fiber section cancels exactly") {
  for (std::uint64_t m : {2, 3, 5}) {
    for (std::uint64_t N = 3; N <= 8; ++N) {
      INFO("m=" << m << " N=" << N);
      CHECK(special_fiber_check(RationalField{}, N, m).pass);
    }
  }
  auto good = special_fiber_check(RationalField{}, 4, 3);
  CHECK(good.fiber.to_string() ==
        "-x1*x2*z0^3 + x1*x2*z3^3 - x1*z1^3 - x2*z2^3");
  auto bad = special_fiber_check(RationalField{}, 4, 3, Rat(0));
  CHECK_FALSE(bad.pass);
  CHECK(bad.residual.to_string() == "-x1*x2");
  auto p7 = special_fiber_check(PrimeField{Int(7)}, 5, 3, Int(1));
  CHECK(p7.pass);
}

TEST_CASE("cyclic cover in the smallest case") {
  auto cover = cyclic_cover(RationalField{}, 3, 6, 2);
  const auto& ctx = cover.branch.ctx;
  CHECK(cover.branch.equation ==
        parse_polynomial(
            "x1*(t*(x0^2+x1^2+x2^2)^2 - x0^2*x1*x2)*x0 + x0^3*x2*y2^2", ctx));
  CHECK(cover.branch.equation.is_homogeneous());
  CHECK(cover.branch.equation.degree() == 6);
  CHECK_FALSE(cover.branch.equation.contains_variable(ctx.index_of("y0")));
  CHECK_FALSE(cover.branch.equation.contains_variable(ctx.index_of("y1")));

  CHECK(cover.pre_d_eta == parse_polynomial("-y1^2 + x2*y2^2", ctx));
  CHECK(cover.d_eta == parse_polynomial("-x1*y1^2 + x1*x2*y2^2", ctx));
  CHECK(cover.exponents.head == 1);
  CHECK(cover.exponents.tail == 3);
  CHECK(cover.exponents.pass);

  // the absorption identity: d_eta with y_j -> x1*y_j (middle window only)
  // equals x1 * pre_d_eta; with r = 1 the window is empty
  CHECK(cover.d_eta ==
        PolyQ::variable(ctx, "x1") * cover.pre_d_eta);

  bool threw = false;
  try {
    cyclic_cover(RationalField{}, 3, 7, 2);
  } catch (const NotDivisible&) {
    threw = true;
  }
  CHECK(threw);
  threw = false;
  try {
    cyclic_cover(RationalField{}, 3, 4, 2);
  } catch (const DegreeBelowThreshold&) {
    threw = true;
  }
  CHECK(threw);
}

TEST_CASE("cyclic cover absorption identity with a real middle window") {
  for (std::uint64_t m : {2, 3}) {
    for (std::uint64_t N : {6, 10, 13}) {
      auto bound = cyclic_thresholds(N, m);
      auto d = bound.min_degree.convert_to<std::uint64_t>();
      auto cover = cyclic_cover(RationalField{}, N, d, m);
      const auto& ctx = cover.branch.ctx;
      auto split = dimension_split(N);
      INFO("m=" << m << " N=" << N << " d=" << d);

      CHECK(cover.branch.equation.degree() == static_cast<long long>(d));
      CHECK(cover.exponents.pass);

      std::map<std::string, PolyQ> absorb;
      for (std::uint64_t j = 2; j <= split.r; ++j)
        absorb.emplace("y" + std::to_string(j),
                       PolyQ::variable(ctx, "x1") *
                           PolyQ::variable(ctx, "y" + std::to_string(j)));
      CHECK(cover.d_eta.substitute(ctx, absorb) ==
            PolyQ::variable(ctx, "x1") * cover.pre_d_eta);

      // degree d - m fails at least one exponent margin
      CHECK_FALSE(cyclic_exponent_report(N, d - m, m).pass);
    }
  }
}

TEST_CASE("cyclic affine chart matches the pencil member") {
  for (std::uint64_t m : {2, 3}) {
    for (std::uint64_t N : {3, 6, 10}) {
      auto bound = cyclic_thresholds(N, m);
      auto d = bound.min_degree.convert_to<std::uint64_t>();
      auto cover = cyclic_cover(RationalField{}, N, d, m);
      auto split = dimension_split(N);
      auto pencil = pencil_member(RationalField{}, N, m + split.n, m);
      INFO("m=" << m << " N=" << N);

      std::map<std::string, PolyQ> x0_one;
      x0_one.emplace("x0", PolyQ::one(cover.branch.ctx));
      auto pencil_chart =
          pencil.equation.substitute(cover.branch.ctx, x0_one);
      CHECK(cover.affine_model == -pencil_chart);
    }
  }
}

TEST_CASE("explicit example over the rationals") {
  auto ex = explicit_example_rational(3, 4, 2, Int(3));
  const auto& ctx = ex.spec.ctx;
  CHECK(ex.spec.equation ==
        parse_polynomial("3*(x0^2+x1^2+x2^2)^2 - x0^2*x1*x2 - x0*x1*y1^2 + "
                         "x1*x2*y2^2 + s*(x0^4+x1^4+x2^4+y1^4+y2^4)",
                         ctx));
  std::map<std::string, PolyQ> s0;
  s0.emplace("s", PolyQ::zero(ctx));
  CHECK(ex.spec.equation.substitute(ctx, s0) == ex.pencil_part);

  // the s -> 0 part is the pencil member with the twist factor set to p
  auto pencil = pencil_member(RationalField{}, 3, 4, 2);
  std::map<std::string, PolyQ> t3;
  t3.emplace("t", PolyQ::constant(ctx, Rat(3)));
  CHECK(pencil.equation.substitute(ctx, t3) == ex.pencil_part);

  bool threw = false;
  try {
    explicit_example_rational(3, 4, 2, Int(4));
  } catch (const BadPrime&) {
    threw = true;
  }
  CHECK(threw);
  threw = false;
  try {
    explicit_example_rational(3, 4, 2, Int(2));
  } catch (const CharDividesM&) {
    threw = true;
  }
  CHECK(threw);
}

TEST_CASE("explicit example over a prime field keeps the twist symbolic") {
  auto ex = explicit_example_prime(3, 4, 2, Int(3));
  const auto& ctx = ex.spec.ctx;
  CHECK(ctx.field().characteristic() == 3);
  CHECK(ctx.is_unit_param(ctx.index_of("s")));
  CHECK(ctx.is_unit_param(ctx.index_of("t")));
  CHECK(ex.spec.equation.contains_variable(ctx.index_of("t")));
  CHECK(ex.spec.equation.is_homogeneous());
  CHECK(ex.spec.equation.degree() == 4);
  std::map<std::string, PolyP> s0;
  s0.emplace("s", PolyP::zero(ctx));
  CHECK(ex.spec.equation.substitute(ctx, s0) == ex.pencil_part);
}
