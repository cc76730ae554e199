#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "errors.hpp"
#include "polynomial.hpp"
#include "roots.hpp"

namespace torcert {

template <class F>
struct VariableCheck {
  std::string var;
  bool has_pure_power = false;
  Polynomial<F> pure_coefficient;  // multiplier of var^deg, unit params only
  bool root_found = false;
  Polynomial<F> root;              // m-th root of the reduction mod var
  std::string obstruction;         // first failing monomial when no root
  bool pass = false;
};

template <class F>
struct TwistingReport {
  Polynomial<F> input;  // after homogenization
  std::uint64_t m = 0;
  bool degree_divisible = false;
  std::vector<VariableCheck<F>> checks;
  bool verdict = false;
};

namespace detail {

// Terms of g of shape (unit monomial) * var^deg; nonzero iff var^deg occurs.
template <class F>
Polynomial<F> pure_power_coefficient(const Polynomial<F>& g, std::size_t var,
                                     long long deg) {
  const Context<F>& ctx = g.context();
  Polynomial<F> out = Polynomial<F>::zero(ctx);
  for (const auto& t : g.terms()) {
    bool pure = !ctx.is_unit_param(var) &&
                t.mono.e[var] == static_cast<unsigned>(deg);
    for (std::size_t v = 0; pure && v < ctx.size(); ++v)
      if (v != var && !ctx.is_unit_param(v) && t.mono.e[v] != 0) pure = false;
    if (!pure) continue;
    Monomial rest = t.mono;
    rest.e[var] = 0;
    out = out + Polynomial<F>::from_terms(ctx, {{rest, t.coeff}});
  }
  return out;
}

}  // namespace detail

// Checks, coordinate by coordinate, whether a homogeneous polynomial
// contains every pure power var^deg and becomes an m-th power after
// setting each coordinate to zero (up to unit-parameter factors when
// units_are_powers is set).  Non-homogeneous input is first homogenized
// with the named variable.
template <class F>
TwistingReport<F> is_twisting_type(const Polynomial<F>& p, std::uint64_t m,
                                   bool units_are_powers,
                                   const std::string& homogenize_with = "x0") {
  if (p.is_zero()) throw ZeroInput("cannot classify the zero polynomial");
  if (m < 2) throw OutOfRange("modulus must be at least 2");
  Polynomial<F> g = p.is_homogeneous() ? p : p.homogenize(homogenize_with);
  const Context<F>& ctx = g.context();
  const long long deg = g.degree();
  if (deg < 1) throw OutOfRange("need a positive-degree polynomial");

  TwistingReport<F> report{g, m, deg % static_cast<long long>(m) == 0, {}, false};
  bool all = true;
  for (std::size_t v = 0; v < ctx.size(); ++v) {
    if (ctx.is_unit_param(v)) continue;
    VariableCheck<F> check{ctx.name(v), false, Polynomial<F>::zero(ctx),
                           false,       Polynomial<F>::zero(ctx), "", false};
    check.pure_coefficient = detail::pure_power_coefficient(g, v, deg);
    check.has_pure_power = !check.pure_coefficient.is_zero();

    Polynomial<F> reduced = g.reduce_mod_variable(v);
    if (reduced.is_zero()) {
      check.obstruction = "reduction modulo " + check.var + " is zero";
    } else {
      try {
        auto root = mth_root(reduced, m, units_are_powers);
        check.root_found = true;
        check.root = root.root;
      } catch (const NotAPower& ex) {
        check.obstruction =
            ex.monomial().empty() ? ex.what() : ex.monomial();
      }
    }
    check.pass = check.has_pure_power && check.root_found;
    all = all && check.pass;
    report.checks.push_back(std::move(check));
  }
  report.verdict = report.degree_divisible && all;
  return report;
}

// g = G^m + x0^(e*m-n) * x1...xn for homogeneous G of degree e containing
// every pure power x_i^e.  The context's non-unit variables must be named
// x0..xn.
template <class F>
Polynomial<F> make_twisting_g(const Polynomial<F>& G, std::uint64_t m) {
  if (G.is_zero()) throw ZeroInput("seed polynomial must be nonzero");
  if (m < 2) throw OutOfRange("modulus must be at least 2");
  if (!G.is_homogeneous()) throw NotHomogeneous("seed must be homogeneous");
  const Context<F>& ctx = G.context();
  const long long e = G.degree();
  if (e < 1) throw OutOfRange("seed must have positive degree");

  std::uint64_t coords = 0;
  for (std::size_t v = 0; v < ctx.size(); ++v)
    if (!ctx.is_unit_param(v)) ++coords;
  if (coords < 2) throw OutOfRange("need coordinates x0..xn with n >= 1");
  const std::uint64_t n = coords - 1;
  for (std::uint64_t i = 0; i <= n; ++i) {
    std::string nm = "x" + std::to_string(i);
    std::size_t idx = ctx.index_of(nm);
    if (detail::pure_power_coefficient(G, idx, e).is_zero())
      throw MissingPurePower(nm);
  }
  if (static_cast<std::uint64_t>(e) * m <= n)
    throw DegreeTooSmall("need deg(G) * m > n");

  Monomial tail = Monomial::unit(ctx.size());
  tail.e[ctx.index_of("x0")] =
      static_cast<unsigned>(static_cast<std::uint64_t>(e) * m - n);
  for (std::uint64_t i = 1; i <= n; ++i)
    tail.e[ctx.index_of("x" + std::to_string(i))] = 1;
  return G.pow(m) + Polynomial<F>::from_terms(ctx, {{tail, ctx.field().one()}});
}

// g = T * (x0^c + ... + xn^c)^m - (-1)^n * x0^(m*c-n) * x1...xn with
// c = ceil((n+1)/m), for an arbitrary nonzero twist factor T.
template <class F>
Polynomial<F> make_proof_g_from(const Polynomial<F>& T, std::uint64_t m,
                                std::uint64_t n) {
  if (m < 2 || n < 1) throw OutOfRange("need m >= 2 and n >= 1");
  if (T.is_zero()) throw ZeroParameter("twist factor must be nonzero");
  const Context<F>& ctx = T.context();
  const std::uint64_t c =
      static_cast<std::uint64_t>(ceil_div(Int(n + 1), Int(m)));

  Polynomial<F> sum = Polynomial<F>::zero(ctx);
  for (std::uint64_t i = 0; i <= n; ++i)
    sum = sum + Polynomial<F>::variable(ctx, "x" + std::to_string(i),
                                        static_cast<unsigned>(c));
  Polynomial<F> head = T * sum.pow(m);

  Monomial tail = Monomial::unit(ctx.size());
  tail.e[ctx.index_of("x0")] = static_cast<unsigned>(m * c - n);
  for (std::uint64_t i = 1; i <= n; ++i)
    tail.e[ctx.index_of("x" + std::to_string(i))] = 1;
  auto sign =
      n % 2 == 0 ? ctx.field().one() : ctx.field().neg(ctx.field().one());
  return head - Polynomial<F>::from_terms(ctx, {{tail, sign}});
}

// Unit-parameter twist: the canonical input that passes the twisting check
// with units_are_powers set and fails it with the flag off.
template <class F>
Polynomial<F> make_proof_g(const Context<F>& ctx, std::uint64_t m,
                           std::uint64_t n, const std::string& unit = "t") {
  std::size_t tidx = ctx.index_of(unit);
  if (!ctx.is_unit_param(tidx))
    throw NotAUnitParam(unit + " must be declared as a unit parameter");
  return make_proof_g_from(Polynomial<F>::variable(ctx, unit), m, n);
}

}  // namespace torcert
