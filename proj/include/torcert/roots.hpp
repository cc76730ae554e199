#pragma once

#include <cstdint>
#include <vector>

#include "errors.hpp"
#include "numbers.hpp"
#include "polynomial.hpp"

namespace torcert {

// Outcome of m-th root extraction: unit_constant * unit_monomial * root^m
// reproduces the input exactly.  The unit monomial involves unit parameters
// only, with exponents < m; unit_constant is 1 unless units_are_powers.
template <class F>
struct RootResult {
  Polynomial<F> root;
  typename F::Elem unit_constant;
  Monomial unit_monomial;

  bool unit_is_trivial(const Context<F>& ctx) const {
    return ctx.field().eq(unit_constant, ctx.field().one()) &&
           unit_monomial.is_constant();
  }

  Polynomial<F> unit_polynomial(const Context<F>& ctx) const {
    return Polynomial<F>::constant(ctx, unit_constant)
        .times_term(unit_monomial, ctx.field().one());
  }
};

namespace detail {

inline std::vector<Int> binomial_row(std::uint64_t k) {
  std::vector<Int> row(k + 1, 1);
  for (std::uint64_t j = 1; j < k; ++j)
    row[j] = row[j - 1] * Int(k - j + 1) / Int(j);
  return row;
}

// Peels the graded-lex-leading term: given monic-or-rootable leading data, the
// next root term is forced, so the whole root is found or the first
// obstructing monomial is reported.
template <class F>
Polynomial<F> coprime_root_peel(const Polynomial<F>& p, std::uint64_t m,
                                bool monic_mode,
                                typename F::Elem* unit_constant) {
  using Poly = Polynomial<F>;
  const Context<F>& ctx = p.context();
  const F& f = ctx.field();
  const auto& lead = p.leading_term();

  for (unsigned e : lead.mono.e)
    if (e % m != 0)
      throw NotAPower("leading monomial is not an m-th power",
                      monomial_string(ctx, lead.mono));
  Monomial qlead = lead.mono;
  for (auto& e : qlead.e) e /= static_cast<unsigned>(m);

  typename F::Elem gamma;
  Poly work = p;
  if (monic_mode) {
    *unit_constant = lead.coeff;
    work = p.scaled(f.inv(lead.coeff));
    gamma = f.one();
  } else {
    auto g = f.nth_root(lead.coeff, m);
    if (!g)
      throw NotAPower("leading coefficient has no m-th root",
                      monomial_string(ctx, lead.mono));
    gamma = *g;
  }

  // denom = m * gamma^(m-1), invertible since char does not divide m here.
  typename F::Elem gpow = f.one();
  for (std::uint64_t i = 0; i + 1 < m; ++i) gpow = f.mul(gpow, gamma);
  const typename F::Elem denom_inv = f.inv(f.mul(f.from_int(Int(m)), gpow));

  Poly q = Poly::from_terms(ctx, {typename Poly::Term{qlead, gamma}});
  std::vector<Poly> pows;  // pows[k] = q^k
  pows.reserve(m + 1);
  for (std::uint64_t k = 0; k <= m; ++k) pows.push_back(q.pow(k));

  Monomial qlead_m1 = Monomial::unit(ctx.size());
  for (std::size_t i = 0; i < qlead.e.size(); ++i)
    qlead_m1.e[i] = qlead.e[i] * static_cast<unsigned>(m - 1);

  for (;;) {
    Poly r = work - pows[m];
    if (r.is_zero()) break;
    const auto& rt = r.leading_term();
    if (!rt.mono.divisible_by(qlead_m1))
      throw NotAPower("monomial outside the root's span",
                      monomial_string(ctx, rt.mono));
    Monomial tau_mono = rt.mono.divided_by(qlead_m1);
    typename F::Elem tau_coeff = f.mul(rt.coeff, denom_inv);
    // Update q^k tables via (q + tau)^k = sum_j C(k,j) q^(k-j) tau^j.
    std::vector<Poly> next;
    next.reserve(m + 1);
    next.push_back(pows[0]);
    for (std::uint64_t k = 1; k <= m; ++k) {
      auto row = binomial_row(k);
      Poly acc = pows[k];
      Monomial tj = Monomial::unit(ctx.size());
      typename F::Elem cj = f.one();
      for (std::uint64_t j = 1; j <= k; ++j) {
        tj = tj.times(tau_mono);
        cj = f.mul(cj, tau_coeff);
        acc = acc + pows[k - j].times_term(tj, f.mul(f.from_int(row[j]), cj));
      }
      next.push_back(std::move(acc));
    }
    pows = std::move(next);
    q = q + Poly::from_terms(ctx, {typename Poly::Term{tau_mono, tau_coeff}});
  }
  return q;
}

}  // namespace detail

// Decides whether p = u * q^m with u a unit (1, or a constant times a
// monomial in unit parameters when units_are_powers is set) and returns q
// with its leading coefficient in canonical form.  Throws NotAPower with the
// first obstructing monomial otherwise.
template <class F>
RootResult<F> mth_root(const Polynomial<F>& p, std::uint64_t m,
                       bool units_are_powers) {
  using Poly = Polynomial<F>;
  const Context<F>& ctx = p.context();
  const F& f = ctx.field();
  if (p.is_zero()) throw ZeroInput("m-th root of the zero polynomial");
  if (m < 2) throw OutOfRange("root exponent must be at least 2");

  RootResult<F> result{Poly::one(ctx), f.one(), Monomial::unit(ctx.size())};
  Monomial root_carry = Monomial::unit(ctx.size());

  Poly work = p;
  if (units_are_powers) {
    // Strip each unit parameter's minimal exponent; q absorbs floor(mu/m),
    // the unit keeps mu mod m.
    Monomial strip = Monomial::unit(ctx.size());
    for (std::size_t v = 0; v < ctx.size(); ++v) {
      if (!ctx.is_unit_param(v)) continue;
      unsigned mu = work.terms().front().mono.e[v];
      for (const auto& t : work.terms()) mu = std::min(mu, t.mono.e[v]);
      if (mu == 0) continue;
      strip.e[v] = mu;
      root_carry.e[v] = mu / static_cast<unsigned>(m);
      result.unit_monomial.e[v] = mu % static_cast<unsigned>(m);
    }
    if (!strip.is_constant()) {
      std::vector<typename Poly::Term> ts = work.terms();
      for (auto& t : ts) t.mono = t.mono.divided_by(strip);
      work = Poly::from_terms(ctx, std::move(ts));
    }
  }

  // Characteristic part: over F_p a p^e-th power is exactly a polynomial
  // whose exponents are all divisible by p^e (coefficients are fixed by
  // Frobenius), so that part of the root is read off directly.
  std::uint64_t m_rem = m;
  const Int chr = f.characteristic();
  if (chr > 0 && Int(m) % chr == 0) {
    std::uint64_t pe = 1;
    const std::uint64_t pc = chr.convert_to<std::uint64_t>();
    while (m_rem % pc == 0) {
      m_rem /= pc;
      pe *= pc;
    }
    std::vector<typename Poly::Term> ts = work.terms();
    for (auto& t : ts)
      for (auto& e : t.mono.e) {
        if (e % pe != 0)
          throw NotAPower("exponent not divisible by the characteristic part",
                          monomial_string(ctx, t.mono));
        e /= static_cast<unsigned>(pe);
      }
    work = Poly::from_terms(ctx, std::move(ts));
  }

  Poly q = (m_rem == 1) ? work
                        : detail::coprime_root_peel(
                              work, m_rem, units_are_powers,
                              &result.unit_constant);
  result.root = q.times_term(root_carry, f.one());
  return result;
}

}  // namespace torcert
