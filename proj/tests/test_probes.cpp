#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "torcert/construct.hpp"
#include "torcert/parse.hpp"
#include "torcert/probes.hpp"

using namespace torcert;

namespace {

template <class F>
HypersurfaceSpec<F> wrap(const Polynomial<F>& p) {
  return HypersurfaceSpec<F>{p.context(), p, "", "", {}, {}};
}

}  // namespace

TEST_CASE("diagonal cubic surface scans clean over F_5") {
  ContextQ ctx(RationalField{}, {"x0", "x1", "x2", "x3"});
  auto p = parse_polynomial("x0^3 + x1^3 + x2^3 + x3^3", ctx);
  auto rep = smoothness_probe(wrap(p), Int(5), {});
  CHECK(rep.pass);
  CHECK(rep.verdict == "NoSingularPointFound");
  CHECK(rep.points_scanned == Int(156));  // (5^4 - 1)/4
}

TEST_CASE("a reducible quadric reports its least singular point") {
  ContextQ ctx(RationalField{}, {"x0", "x1", "x2", "x3"});
  auto p = parse_polynomial("x0*x1", ctx);
  auto rep = smoothness_probe(wrap(p), Int(3), {});
  CHECK_FALSE(rep.pass);
  CHECK(rep.verdict == "SingularPoint");
  CHECK(rep.witness == "(0 : 0 : 0 : 1)");
  CHECK(rep.points_scanned == Int(40));
}

TEST_CASE("singular witnesses re-verify exactly") {
  ContextP ctx(PrimeField{Int(5)}, {"x0", "x1", "x2"});
  auto p = parse_polynomial("x0^2*x2 + x1^3", ctx);  // cuspidal cubic
  auto rep = smoothness_probe(wrap(p), Int(5), {});
  REQUIRE_FALSE(rep.pass);
  CHECK(rep.witness == "(0 : 0 : 1)");
  // the cusp: equation and both partials vanish at (0 : 0 : 1)
  std::map<std::string, PolyP> at;
  at.emplace("x0", PolyP::zero(ctx));
  at.emplace("x1", PolyP::zero(ctx));
  at.emplace("x2", PolyP::one(ctx));
  CHECK(p.substitute(ctx, at).is_zero());
}

TEST_CASE("quadratic extension scan") {
  ContextQ ctx(RationalField{}, {"x0", "x1", "x2"});
  auto p = parse_polynomial("x0^2 + x1^2 + x2^2", ctx);
  auto rep = smoothness_probe(wrap(p), Int(9), {});
  CHECK(rep.pass);
  CHECK(rep.points_scanned == Int(91));  // (9^3 - 1)/8
  bool noted = false;
  for (const auto& n : rep.notes) noted = noted || n.find("w^2") != std::string::npos;
  CHECK(noted);
}

TEST_CASE("unit parameters need assignments") {
  ContextQ ctx(RationalField{}, {"t", "x0", "x1"}, {"t"});
  auto p = parse_polynomial("t*x0^2 + x1^2", ctx);
  bool threw = false;
  try {
    smoothness_probe(wrap(p), Int(3), {});
  } catch (const FieldMismatch&) {
    threw = true;
  }
  CHECK(threw);
  auto rep = smoothness_probe(wrap(p), Int(3), {{"t", Int(1)}});
  CHECK(rep.pass);
  bool zero_unit = false;
  try {
    smoothness_probe(wrap(p), Int(3), {{"t", Int(3)}});
  } catch (const OutOfRange&) {
    zero_unit = true;
  }
  CHECK(zero_unit);
}

TEST_CASE("field and size guards") {
  ContextP ctx(PrimeField{Int(5)}, {"x0", "x1"});
  auto p = parse_polynomial("x0^2 + x1^2", ctx);
  bool threw = false;
  try {
    smoothness_probe(wrap(p), Int(7), {});
  } catch (const FieldMismatch&) {
    threw = true;
  }
  CHECK(threw);

  ContextQ big(RationalField{},
               {"x0", "x1", "x2", "x3", "x4", "x5", "x6", "x7", "x8", "x9"});
  auto q = parse_polynomial("x0^2 + x1^2", big);
  threw = false;
  try {
    smoothness_probe(wrap(q), Int(1021), {});
  } catch (const AmbientTooLarge&) {
    threw = true;
  }
  CHECK(threw);

  threw = false;
  try {
    detail::ScanField::make(Int(12));
  } catch (const OutOfRange&) {
    threw = true;
  }
  CHECK(threw);
}

TEST_CASE("explicit example scans clean over F_7") {
  auto ex = explicit_example_rational(3, 4, 2, Int(3));
  auto rep = smoothness_probe(ex.spec, Int(7), {{"s", Int(1)}});
  CHECK(rep.pass);
  CHECK(rep.points_scanned == Int(2801));  // (7^5 - 1)/6 in P^4
}

TEST_CASE("integrality probe finds exact factors") {
  ContextQ ctx(RationalField{}, {"x0", "x1"});
  auto prod = parse_polynomial("x0*x1", ctx);
  auto rep = integrality_probe(prod, 8, 1);
  CHECK_FALSE(rep.pass);
  CHECK(rep.verdict == "ReducibleWitness");
  CHECK(rep.witness == "x0");
  // re-verify: the witness divides the input exactly
  auto quotient = prod.try_divide(parse_polynomial(rep.witness, ctx));
  CHECK(quotient.has_value());

  auto square = parse_polynomial("(x0+x1)^2", ctx);
  auto rep2 = integrality_probe(square, 8, 1);
  CHECK_FALSE(rep2.pass);
  CHECK(rep2.witness == "x0 + x1");
  auto w = parse_polynomial(rep2.witness, ctx);
  CHECK(w * w == square);

  ContextQ uctx(RationalField{}, {"t", "x0", "x1"}, {"t"});
  auto twisted = parse_polynomial("t*(x0+x1)^2", uctx);
  auto rep3 = integrality_probe(twisted, 8, 1);
  CHECK_FALSE(rep3.pass);
  CHECK(rep3.witness == "x0 + x1");
}

TEST_CASE("integrality probe on irreducible inputs") {
  ContextQ ctx(RationalField{}, {"x0", "x1", "x2"});
  auto fermat = parse_polynomial("x0^4 + x1^4 + x2^4", ctx);
  auto rep = integrality_probe(fermat, 16, 7);
  CHECK(rep.pass);
  CHECK(rep.verdict == "ProbablyIrreducible");
  CHECK(rep.trials == 16);
  CHECK(rep.squarefree_restrictions > 0);
  CHECK(rep.seed == 7);

  auto same = integrality_probe(fermat, 16, 7);
  CHECK(same.squarefree_restrictions == rep.squarefree_restrictions);

  auto pencil = pencil_member(RationalField{}, 3, 4, 2);
  auto rep2 = integrality_probe(pencil.equation, 12, 3);
  CHECK(rep2.pass);
  CHECK(rep2.verdict == "ProbablyIrreducible");
  CHECK(rep2.squarefree_restrictions > 0);

  bool threw = false;
  try {
    integrality_probe(PolyQ::zero(ctx), 4, 0);
  } catch (const ZeroInput&) {
    threw = true;
  }
  CHECK(threw);
}
