#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "errors.hpp"
#include "hypersurface.hpp"
#include "milnor.hpp"
#include "polynomial.hpp"

namespace torcert {

// Variable layout of the diagonal-form rings: x_1..x_n then y_0..y_{2^n-1}.
template <class F>
Context<F> pfister_context(const F& field, std::uint64_t n) {
  if (n > 30) throw OutOfRange("form dimension 2^n does not fit");
  std::vector<std::string> names;
  for (std::uint64_t i = 1; i <= n; ++i)
    names.push_back("x" + std::to_string(i));
  for (std::uint64_t j = 0; j < (std::uint64_t{1} << n); ++j)
    names.push_back("y" + std::to_string(j));
  return Context<F>(field, std::move(names));
}

// sum over all subsets eps of {1..n} of prod_i (-chi_i)^{eps_i} * y_eps^m,
// where y_eps is ys[sum eps_i 2^(i-1)].  The chi_i and the ys share one
// context; ys.size() must be 2^chi.size().
template <class F>
Polynomial<F> pfister_combination(std::uint64_t m,
                                  const std::vector<Polynomial<F>>& chi,
                                  const Context<F>& ctx,
                                  const std::vector<std::string>& ys) {
  const std::uint64_t n = chi.size();
  if (n > 30) throw OutOfRange("form dimension 2^n does not fit");
  if (ys.size() != (std::uint64_t{1} << n))
    throw OutOfRange("need exactly 2^n diagonal variables");
  std::vector<Polynomial<F>> coeff;
  coeff.push_back(Polynomial<F>::one(ctx));
  for (std::uint64_t j = 1; j < (std::uint64_t{1} << n); ++j) {
    std::uint64_t i = 0;
    while (!(j & (std::uint64_t{1} << i))) ++i;
    coeff.push_back(coeff[j & ~(std::uint64_t{1} << i)] * -chi[i]);
  }
  Polynomial<F> body = Polynomial<F>::zero(ctx);
  for (std::uint64_t j = 0; j < ys.size(); ++j)
    body = body +
           coeff[j] * Polynomial<F>::variable(ctx, ys[j],
                                              static_cast<unsigned>(m));
  return body;
}

namespace detail {

template <class F>
std::vector<Polynomial<F>> first_variables(const Context<F>& ctx,
                                           std::uint64_t n) {
  std::vector<Polynomial<F>> xs;
  for (std::uint64_t i = 1; i <= n; ++i)
    xs.push_back(Polynomial<F>::variable(ctx, "x" + std::to_string(i)));
  return xs;
}

inline std::vector<std::string> y_window(std::uint64_t first,
                                         std::uint64_t count) {
  std::vector<std::string> ys;
  for (std::uint64_t j = 0; j < count; ++j)
    ys.push_back("y" + std::to_string(first + j));
  return ys;
}

}  // namespace detail

template <class F>
struct PfisterForm {
  std::uint64_t m;
  std::uint64_t n;
  Context<F> ctx;
  Polynomial<F> body;
};

template <class F>
PfisterForm<F> pfister_form(const F& field, std::uint64_t m, std::uint64_t n) {
  if (m < 2) throw OutOfRange("exponent must be at least 2");
  Context<F> ctx = pfister_context(field, n);
  auto body = pfister_combination(m, detail::first_variables(ctx, n), ctx,
                                  detail::y_window(0, std::uint64_t{1} << n));
  return PfisterForm<F>{m, n, ctx, body};
}

// Coefficient of y_j^m in the n-fold form: prod over set bits i-1 of (-x_i).
template <class F>
Polynomial<F> pfister_coefficient(const Context<F>& ctx, std::uint64_t n,
                                  std::uint64_t j) {
  if (n > 30 || j >= (std::uint64_t{1} << n))
    throw IndexOutOfRange("coefficient index must satisfy j < 2^n");
  Polynomial<F> c = Polynomial<F>::one(ctx);
  for (std::uint64_t i = 1; i <= n; ++i)
    if (j & (std::uint64_t{1} << (i - 1)))
      c = c * -Polynomial<F>::variable(ctx, "x" + std::to_string(i));
  return c;
}

// a_i = x_i * Pf_{m,i-1} evaluated on the window y_{2^(i-1)}..y_{2^i-1}.
// Lives in any context containing x_1..x_i and that window.
template <class F>
Polynomial<F> pfister_a(const Context<F>& ctx, std::uint64_t m,
                        std::uint64_t i) {
  if (i < 1 || i > 30) throw OutOfRange("window index out of range");
  auto window = pfister_combination(
      m, detail::first_variables(ctx, i - 1), ctx,
      detail::y_window(std::uint64_t{1} << (i - 1),
                       std::uint64_t{1} << (i - 1)));
  return Polynomial<F>::variable(ctx, "x" + std::to_string(i)) * window;
}

template <class F>
struct PfisterIdentityResult {
  VerificationResult<F> split;
  VerificationResult<F> telescope;
  bool pass;
};

// split:     Pf_n(y_0..) = Pf_{n-1}(lower half) - x_n * Pf_{n-1}(upper half)
// telescope: Pf_n = y_0^m - sum_{i=1}^n a_i
template <class F>
PfisterIdentityResult<F> verify_pfister_identities(const F& field,
                                                   std::uint64_t m,
                                                   std::uint64_t n) {
  if (n < 1) throw OutOfRange("need at least one slot");
  PfisterForm<F> full = pfister_form(field, m, n);
  const Context<F>& ctx = full.ctx;
  const std::uint64_t half = std::uint64_t{1} << (n - 1);

  auto lower = pfister_combination(m, detail::first_variables(ctx, n - 1), ctx,
                                   detail::y_window(0, half));
  auto upper = pfister_combination(m, detail::first_variables(ctx, n - 1), ctx,
                                   detail::y_window(half, half));
  auto xn = Polynomial<F>::variable(ctx, "x" + std::to_string(n));
  Polynomial<F> split_diff = full.body - (lower - xn * upper);

  Polynomial<F> acc =
      Polynomial<F>::variable(ctx, "y0", static_cast<unsigned>(m));
  for (std::uint64_t i = 1; i <= n; ++i) acc = acc - pfister_a(ctx, m, i);
  Polynomial<F> tele_diff = full.body - acc;

  return PfisterIdentityResult<F>{
      VerificationResult<F>{split_diff.is_zero(), split_diff},
      VerificationResult<F>{tele_diff.is_zero(), tele_diff},
      split_diff.is_zero() && tele_diff.is_zero()};
}

// The closed-form relation (x_1,..,x_n) = (a_1,..,a_n) with the a_i built
// from windowed forms, certified entry-by-entry against the propagation
// chain from the degree-1 seed.
template <class F>
UniversalRelation<F> canonical_relation(const F& field, std::uint64_t m,
                                        std::uint64_t n) {
  if (n < 1) throw OutOfRange("need at least one entry");
  UniversalRelation<F> chain = base_relation(field, m);
  for (std::uint64_t i = 1; i < n; ++i) chain = propagate_relation(chain);
  for (std::uint64_t i = 1; i <= n; ++i) {
    Polynomial<F> direct = pfister_a(chain.ctx, m, i);
    if (!(direct == chain.rhs[i - 1]))
      throw EquivalenceFailure("windowed entry a" + std::to_string(i) +
                               " differs from the propagation chain");
  }
  return chain;
}

// Diagonal hypersurface sum_eps prod(-chi_i)^eps_i * y_phi(eps)^m = 0 in the
// projective space on y_0..y_{2^n-1}.  The chi_i share a context that
// already declares those coordinates.
template <class F>
HypersurfaceSpec<F> pfister_hypersurface(std::uint64_t m,
                                         const std::vector<Polynomial<F>>& chi) {
  if (chi.empty()) throw ZeroParameter("need at least one coefficient");
  const Context<F>& ctx = chi.front().context();
  Int chr = ctx.field().characteristic();
  if (chr != 0 && Int(m) % chr == 0)
    throw CharDividesM("exponent divisible by the characteristic");
  for (const auto& c : chi)
    if (c.is_zero()) throw ZeroParameter("coefficients must be nonzero");
  const std::uint64_t n = chi.size();
  auto eq = pfister_combination(m, chi, ctx,
                                detail::y_window(0, std::uint64_t{1} << n));
  HypersurfaceSpec<F> spec{ctx, eq, "", "", {}, {}};
  spec.ambient =
      "P^" + std::to_string((std::uint64_t{1} << n) - 1) +
      " with coordinates y0..y" + std::to_string((std::uint64_t{1} << n) - 1);
  spec.source = "diagonal form of rank 2^n twisted by the given coefficients";
  spec.params = {{"m", Int(m)}, {"n", Int(n)}};
  return spec;
}

}  // namespace torcert
