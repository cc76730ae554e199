#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "errors.hpp"
#include "fields.hpp"
#include "hypersurface.hpp"
#include "pfister.hpp"
#include "polynomial.hpp"
#include "twisting.hpp"

namespace torcert {

namespace detail {

template <class F>
Context<F> family_context(const F& field, std::uint64_t n, std::uint64_t r,
                          const std::vector<std::string>& units,
                          const std::string& fiber_prefix,
                          std::uint64_t fiber_first) {
  std::vector<std::string> names = units;
  for (std::uint64_t i = 0; i <= n; ++i)
    names.push_back("x" + std::to_string(i));
  for (std::uint64_t j = fiber_first; j <= r + 1; ++j)
    names.push_back(fiber_prefix + std::to_string(j));
  return Context<F>(field, names, units);
}

template <class F>
void check_family_inputs(const F& field, std::uint64_t m) {
  if (m < 2) throw OutOfRange("need m >= 2");
  const Int chr = field.characteristic();
  if (chr != 0 && Int(m) % chr == 0)
    throw CharDividesM("exponent divisible by the characteristic");
}

template <class F>
Polynomial<F> single_monomial(const Context<F>& ctx,
                              const std::map<std::string, unsigned>& exps,
                              bool negate) {
  Monomial mono = Monomial::unit(ctx.size());
  for (const auto& [name, e] : exps) mono.e[ctx.index_of(name)] = e;
  auto c = negate ? ctx.field().neg(ctx.field().one()) : ctx.field().one();
  return Polynomial<F>::from_terms(ctx, {{mono, c}});
}

// sum_{j=1}^r x0^(n - deg c_j) * c_j(x1..xn) * fiber_j^m
template <class F>
Polynomial<F> window_sum(const Context<F>& ctx, std::uint64_t n,
                         std::uint64_t r, std::uint64_t m,
                         const std::string& fiber_prefix) {
  Polynomial<F> sum = Polynomial<F>::zero(ctx);
  for (std::uint64_t j = 1; j <= r; ++j) {
    const unsigned deg_cj = static_cast<unsigned>(__builtin_popcountll(j));
    auto x0pow = single_monomial(
        ctx, {{"x0", static_cast<unsigned>(n) - deg_cj}}, false);
    auto yj = Polynomial<F>::variable(ctx, fiber_prefix + std::to_string(j),
                                      static_cast<unsigned>(m));
    sum = sum + x0pow * pfister_coefficient(ctx, n, j) * yj;
  }
  return sum;
}

// (-1)^n * x1...xn * fiber^m
template <class F>
Polynomial<F> closing_term(const Context<F>& ctx, std::uint64_t n,
                           std::uint64_t m, const std::string& fiber) {
  std::map<std::string, unsigned> exps{{fiber, static_cast<unsigned>(m)}};
  for (std::uint64_t i = 1; i <= n; ++i)
    exps.emplace("x" + std::to_string(i), 1);
  return single_monomial(ctx, exps, n % 2 == 1);
}

// g * x0^(m+n-deg g) + window sum + closing term: the degree-(m+n) member.
template <class F>
Polynomial<F> pencil_equation(const Context<F>& ctx, std::uint64_t n,
                              std::uint64_t r, std::uint64_t m,
                              const Polynomial<F>& T,
                              const std::string& fiber_prefix) {
  auto g = make_proof_g_from(T, m, n);
  const long long pad = static_cast<long long>(m + n) - g.degree();
  auto head =
      g * single_monomial(ctx, {{"x0", static_cast<unsigned>(pad)}}, false);
  return head + window_sum(ctx, n, r, m, fiber_prefix) +
         closing_term(ctx, n, m,
                      fiber_prefix + std::to_string(r + 1));
}

}  // namespace detail

// Degree-(m+n) hypersurface in P^(N+1) that the degree-d family
// degenerates onto; the leftover factor x0^(d-m-n) is reported as the
// extra_exponent parameter.
template <class F>
HypersurfaceSpec<F> pencil_member(const F& field, std::uint64_t N,
                                  std::uint64_t d, std::uint64_t m) {
  detail::check_family_inputs(field, m);
  const DimensionSplit split = dimension_split(N);
  if (d < m + split.n) throw DegreeTooSmall("need d >= m + n");
  Context<F> ctx = detail::family_context(field, split.n, split.r, {"t"},
                                          "y", 1);
  auto T = Polynomial<F>::variable(ctx, "t");
  auto eq = detail::pencil_equation(ctx, split.n, split.r, m, T, "y");
  if (!eq.is_homogeneous() ||
      eq.degree() != static_cast<long long>(m + split.n))
    throw Error("pencil member is not homogeneous of degree m + n");

  HypersurfaceSpec<F> spec{ctx, eq, "", "", {}, {}};
  spec.ambient = "P^" + std::to_string(N + 1) +
                 " with coordinates x0..x" + std::to_string(split.n) +
                 ",y1..y" + std::to_string(split.r + 1);
  spec.source = "special pencil member of degree m+n";
  spec.params = {{"N", Int(N)},
                 {"d", Int(d)},
                 {"m", Int(m)},
                 {"n", Int(split.n)},
                 {"r", Int(split.r)},
                 {"extra_exponent", Int(d - m - split.n)}};
  return spec;
}

template <class F>
struct BundleModel {
  HypersurfaceSpec<F> spec;
  Polynomial<F> generic_fiber;      // x0 = 1
  Polynomial<F> exceptional_fiber;  // z0 = 0, then x0 = 1
};

// Blow-up model inside the rank-(r+2) projective bundle: the pencil member
// with z0^m on the head term and z-coordinates on the fibers.  Every term
// has z-degree m and x-degree n + (z0-exponent).
template <class F>
BundleModel<F> bundle_model(const F& field, std::uint64_t N, std::uint64_t m) {
  detail::check_family_inputs(field, m);
  const DimensionSplit split = dimension_split(N);
  Context<F> ctx = detail::family_context(field, split.n, split.r, {"t"},
                                          "z", 0);
  auto T = Polynomial<F>::variable(ctx, "t");
  auto g = make_proof_g_from(T, m, split.n);
  const long long pad = static_cast<long long>(m + split.n) - g.degree();
  auto head = g *
              detail::single_monomial(
                  ctx, {{"x0", static_cast<unsigned>(pad)},
                        {"z0", static_cast<unsigned>(m)}}, false);
  auto eq = head + detail::window_sum(ctx, split.n, split.r, m, "z") +
            detail::closing_term(ctx, split.n, m,
                                 "z" + std::to_string(split.r + 1));

  const std::size_t z0 = ctx.index_of("z0");
  for (const auto& term : eq.terms()) {
    std::uint64_t zdeg = 0, xdeg = 0;
    for (std::size_t v = 0; v < ctx.size(); ++v) {
      if (ctx.name(v)[0] == 'z') zdeg += term.mono.e[v];
      if (ctx.name(v)[0] == 'x') xdeg += term.mono.e[v];
    }
    if (zdeg != m || xdeg != split.n + term.mono.e[z0])
      throw Error("bundle model violates its bidegree invariant");
  }

  HypersurfaceSpec<F> spec{ctx, eq, "", "", {}, {}};
  spec.ambient = "projective bundle over P^" + std::to_string(split.n) +
                 " with fiber coordinates z0..z" + std::to_string(split.r + 1);
  spec.source = "blow-up model of the special pencil member";
  spec.params = {{"N", Int(N)},
                 {"m", Int(m)},
                 {"n", Int(split.n)},
                 {"r", Int(split.r)}};

  std::map<std::string, Polynomial<F>> x0_one;
  x0_one.emplace("x0", Polynomial<F>::one(ctx));
  auto generic = eq.substitute(ctx, x0_one);
  std::map<std::string, Polynomial<F>> z0_zero;
  z0_zero.emplace("z0", Polynomial<F>::zero(ctx));
  auto exceptional = eq.substitute(ctx, z0_zero).substitute(ctx, x0_one);
  return BundleModel<F>{std::move(spec), std::move(generic),
                        std::move(exceptional)};
}

template <class F>
struct FiberCheck {
  Polynomial<F> fiber;     // special fiber, affine chart x0 = 1
  Polynomial<F> residual;  // after plugging in the section
  bool pass;
};

// Special fiber -(-1)^n x1..xn z0^m + sum c_j z_j^m + (-1)^n x1..xn z_(r+1)^m
// with its section z0 = 1, z_(r+1) = zr1, z_j = 0; the head and closing
// terms cancel exactly when zr1^m = 1.
template <class F>
FiberCheck<F> special_fiber_check(const F& field, std::uint64_t N,
                                  std::uint64_t m,
                                  typename F::Elem zr1) {
  detail::check_family_inputs(field, m);
  const DimensionSplit split = dimension_split(N);
  std::vector<std::string> names;
  for (std::uint64_t i = 1; i <= split.n; ++i)
    names.push_back("x" + std::to_string(i));
  for (std::uint64_t j = 0; j <= split.r + 1; ++j)
    names.push_back("z" + std::to_string(j));
  Context<F> ctx(field, names);

  std::map<std::string, unsigned> head_exps{{"z0", static_cast<unsigned>(m)}};
  for (std::uint64_t i = 1; i <= split.n; ++i)
    head_exps.emplace("x" + std::to_string(i), 1);
  auto head = detail::single_monomial(ctx, head_exps, split.n % 2 == 0);

  Polynomial<F> middle = Polynomial<F>::zero(ctx);
  for (std::uint64_t j = 1; j <= split.r; ++j)
    middle = middle +
             pfister_coefficient(ctx, split.n, j) *
                 Polynomial<F>::variable(ctx, "z" + std::to_string(j),
                                         static_cast<unsigned>(m));
  auto fiber = head + middle +
               detail::closing_term(ctx, split.n, m,
                                    "z" + std::to_string(split.r + 1));

  std::map<std::string, Polynomial<F>> section;
  section.emplace("z0", Polynomial<F>::one(ctx));
  section.emplace("z" + std::to_string(split.r + 1),
                  Polynomial<F>::constant(ctx, zr1));
  for (std::uint64_t j = 1; j <= split.r; ++j)
    section.emplace("z" + std::to_string(j), Polynomial<F>::zero(ctx));
  auto residual = fiber.substitute(ctx, section);
  return FiberCheck<F>{fiber, residual, residual.is_zero()};
}

template <class F>
FiberCheck<F> special_fiber_check(const F& field, std::uint64_t N,
                                  std::uint64_t m) {
  return special_fiber_check(field, N, m, field.one());
}

template <class F>
struct CyclicCover {
  HypersurfaceSpec<F> branch;   // degree-d branch divisor in P^N
  Polynomial<F> blowup;         // y1^m - (proper transform with y0)
  Polynomial<F> generic_fiber;  // blow-up equation at x0 = 1
  Polynomial<F> pre_d_eta;      // exceptional fiber: y0 = 0, x0 = 1, as displayed
  Polynomial<F> d_eta;          // after multiplying by x1 and absorbing x1^m
  Polynomial<F> affine_model;   // x0 = y0 = 1 chart after the same absorption
  ExponentReport exponents;
};

// Branch divisor, m:1 cover and exceptional-fiber companions for degree d
// divisible by m at or above the certified threshold.
template <class F>
CyclicCover<F> cyclic_cover(const F& field, std::uint64_t N, std::uint64_t d,
                            std::uint64_t m) {
  detail::check_family_inputs(field, m);
  if (d % m != 0) throw NotDivisible("degree must be divisible by m");
  const CyclicBound bound = cyclic_thresholds(N, m);
  if (Int(d) < bound.min_degree)
    throw DegreeBelowThreshold("degree below the certified threshold");
  const DimensionSplit split = dimension_split(N);
  const std::uint64_t n = split.n, r = split.r;

  Context<F> ctx = detail::family_context(field, n, r, {"t"}, "y", 0);
  auto T = Polynomial<F>::variable(ctx, "t");
  auto g = make_proof_g_from(T, m, n);
  const long long head_margin =
      static_cast<long long>(d) - g.degree() - static_cast<long long>(m) + 1;
  if (head_margin <= 0) throw Error("non-positive head exponent");

  auto x1m1 = detail::single_monomial(
      ctx, {{"x1", static_cast<unsigned>(m - 1)}}, false);
  auto head_base =
      x1m1 * g *
      detail::single_monomial(
          ctx, {{"x0", static_cast<unsigned>(head_margin)}}, false);

  Polynomial<F> middle = Polynomial<F>::zero(ctx);
  for (std::uint64_t j = 2; j <= r; ++j) {
    const long long margin = static_cast<long long>(d) -
                             2 * static_cast<long long>(m) + 1 -
                             __builtin_popcountll(j);
    if (margin < 0) throw Error("negative middle exponent");
    middle = middle + x1m1 *
                          detail::single_monomial(
                              ctx, {{"x0", static_cast<unsigned>(margin)}},
                              false) *
                          pfister_coefficient(ctx, n, j) *
                          Polynomial<F>::variable(
                              ctx, "y" + std::to_string(j),
                              static_cast<unsigned>(m));
  }

  const long long tail_margin = static_cast<long long>(d) -
                                static_cast<long long>(m) -
                                static_cast<long long>(n) + 1;
  if (tail_margin <= 0) throw Error("non-positive tail exponent");
  std::map<std::string, unsigned> close_exps{
      {"x0", static_cast<unsigned>(tail_margin)},
      {"y" + std::to_string(r + 1), static_cast<unsigned>(m)}};
  for (std::uint64_t i = 2; i <= n; ++i)
    close_exps.emplace("x" + std::to_string(i), 1);
  auto closing = detail::single_monomial(ctx, close_exps, n % 2 == 1);

  auto branch_eq = head_base + middle + closing;
  if (!branch_eq.is_homogeneous() ||
      branch_eq.degree() != static_cast<long long>(d))
    throw Error("branch divisor is not homogeneous of degree d");

  auto transform = head_base * detail::single_monomial(
                                   ctx, {{"y0", static_cast<unsigned>(m)}},
                                   false) +
                   middle + closing;
  auto y1m = Polynomial<F>::variable(ctx, "y1", static_cast<unsigned>(m));
  auto blowup = y1m - transform;

  std::map<std::string, Polynomial<F>> x0_one;
  x0_one.emplace("x0", Polynomial<F>::one(ctx));
  auto generic = blowup.substitute(ctx, x0_one);
  std::map<std::string, Polynomial<F>> y0_zero;
  y0_zero.emplace("y0", Polynomial<F>::zero(ctx));
  auto pre_d_eta =
      transform.substitute(ctx, y0_zero).substitute(ctx, x0_one) - y1m;

  auto x1 = Polynomial<F>::variable(ctx, "x1");
  Polynomial<F> absorbed_middle = Polynomial<F>::zero(ctx);
  for (std::uint64_t j = 2; j <= r; ++j)
    absorbed_middle = absorbed_middle +
                      pfister_coefficient(ctx, n, j) *
                          Polynomial<F>::variable(
                              ctx, "y" + std::to_string(j),
                              static_cast<unsigned>(m));
  std::map<std::string, unsigned> tail_exps{
      {"y" + std::to_string(r + 1), static_cast<unsigned>(m)}};
  for (std::uint64_t i = 1; i <= n; ++i)
    tail_exps.emplace("x" + std::to_string(i), 1);
  auto absorbed_tail = detail::single_monomial(ctx, tail_exps, n % 2 == 1);
  auto d_eta = -(x1 * y1m) + absorbed_middle + absorbed_tail;

  auto g_affine = g.substitute(ctx, x0_one);
  auto affine_model = x1 * y1m - g_affine - absorbed_middle - absorbed_tail;

  HypersurfaceSpec<F> branch{ctx, branch_eq, "", "", {}, {}};
  branch.ambient = "P^" + std::to_string(N) + " with coordinates x0..x" +
                   std::to_string(n) + ",y2..y" + std::to_string(r + 1);
  branch.source = "branch divisor of the m:1 cyclic cover";
  branch.params = {{"N", Int(N)}, {"d", Int(d)}, {"m", Int(m)},
                   {"n", Int(n)}, {"r", Int(r)}};
  branch.notes.push_back(
      "the cover lives on the blow-up; y0 cuts the exceptional divisor");

  return CyclicCover<F>{std::move(branch),
                        std::move(blowup),
                        std::move(generic),
                        std::move(pre_d_eta),
                        std::move(d_eta),
                        std::move(affine_model),
                        cyclic_exponent_report(N, d, m)};
}

enum class ExampleMode { rational_s, prime_st };

template <class F>
struct ExplicitExample {
  HypersurfaceSpec<F> spec;
  Polynomial<F> pencil_part;  // the s -> 0 specialization
};

namespace detail {

template <class F>
ExplicitExample<F> assemble_example(const F& field, std::uint64_t N,
                                    std::uint64_t d, std::uint64_t m,
                                    const Int& p,
                                    const std::vector<std::string>& units,
                                    bool t_is_variable) {
  check_family_inputs(field, m);
  const DimensionSplit split = dimension_split(N);
  if (d < m + split.n) throw DegreeTooSmall("need d >= m + n");
  Context<F> ctx = family_context(field, split.n, split.r, units, "y", 1);
  auto T = t_is_variable ? Polynomial<F>::variable(ctx, "t")
                         : Polynomial<F>::constant(ctx, field.from_int(p));
  auto F_eq = pencil_equation(ctx, split.n, split.r, m, T, "y");
  auto pencil_part =
      F_eq * single_monomial(
                 ctx, {{"x0", static_cast<unsigned>(d - m - split.n)}}, false);

  Polynomial<F> fermat = Polynomial<F>::zero(ctx);
  for (std::uint64_t i = 0; i <= split.n; ++i)
    fermat = fermat + Polynomial<F>::variable(ctx, "x" + std::to_string(i),
                                              static_cast<unsigned>(d));
  for (std::uint64_t j = 1; j <= split.r + 1; ++j)
    fermat = fermat + Polynomial<F>::variable(ctx, "y" + std::to_string(j),
                                              static_cast<unsigned>(d));
  auto eq = pencil_part + Polynomial<F>::variable(ctx, "s") * fermat;
  if (!eq.is_homogeneous() || eq.degree() != static_cast<long long>(d))
    throw Error("example is not homogeneous of degree d");

  HypersurfaceSpec<F> spec{ctx, eq, "", "", {}, {}};
  spec.ambient = "P^" + std::to_string(N + 1) +
                 " with coordinates x0..x" + std::to_string(split.n) +
                 ",y1..y" + std::to_string(split.r + 1);
  spec.source = "pencil member plus s times the Fermat form of degree d";
  spec.params = {{"N", Int(N)}, {"d", Int(d)}, {"m", Int(m)},
                 {"n", Int(split.n)}, {"r", Int(split.r)}, {"p", p}};
  spec.notes.push_back("smooth for very general s; certified only by probes");
  return ExplicitExample<F>{std::move(spec), std::move(pencil_part)};
}

}  // namespace detail

// Over the rationals with one unit parameter s; the twist factor is the
// numeric prime p itself.
inline ExplicitExample<RationalField> explicit_example_rational(
    std::uint64_t N, std::uint64_t d, std::uint64_t m, const Int& p) {
  if (!is_prime(p)) throw BadPrime("twist prime must be prime");
  if (Int(m) % p == 0) throw CharDividesM("twist prime must not divide m");
  return detail::assemble_example(RationalField{}, N, d, m, p, {"s"}, false);
}

// Over F_p with unit parameters s and t; the twist factor is the symbol t.
inline ExplicitExample<PrimeField> explicit_example_prime(std::uint64_t N,
                                                          std::uint64_t d,
                                                          std::uint64_t m,
                                                          const Int& p) {
  if (!is_prime(p)) throw BadPrime("twist prime must be prime");
  if (Int(m) % p == 0) throw CharDividesM("twist prime must not divide m");
  return detail::assemble_example(PrimeField{p}, N, d, m, p, {"s", "t"}, true);
}

}  // namespace torcert
