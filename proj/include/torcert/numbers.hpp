#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/miller_rabin.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace torcert {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using boost::multiprecision::gcd;
using boost::multiprecision::lcm;

inline Int ipow(Int base, std::uint64_t e) {
  Int r = 1;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

inline Int factorial(std::uint64_t n) {
  Int r = 1;
  for (std::uint64_t k = 2; k <= n; ++k) r *= k;
  return r;
}

inline Int ceil_div(const Int& a, const Int& b) {
  if (b == 0) throw DivisionByZero("ceil_div by zero");
  Int q = a / b, r = a % b;
  if (r != 0 && ((a > 0) == (b > 0))) ++q;
  return q;
}

// Deterministic primality: trial division then Miller-Rabin with a fixed seed.
inline bool is_prime(const Int& n) {
  if (n < 2) return false;
  for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  std::mt19937_64 gen(0x9e3779b97f4a7c15ull);
  return boost::multiprecision::miller_rabin_test(n, 40, gen);
}

// Largest r >= 0 with r^m <= a.  Requires a >= 0, m >= 1.
inline Int iroot(const Int& a, std::uint64_t m) {
  if (a < 0) throw OutOfRange("iroot of negative value");
  if (m == 0) throw OutOfRange("iroot with exponent 0");
  if (m == 1 || a <= 1) return a;
  std::uint64_t bits = boost::multiprecision::msb(a) + 1;
  Int lo = 0, hi = Int(1) << (bits / m + 1);
  while (lo < hi) {
    Int mid = (lo + hi + 1) >> 1;
    if (ipow(mid, m) <= a)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

// Exact m-th root of an integer, sign-aware: even m requires a >= 0.
inline std::optional<Int> exact_iroot(const Int& a, std::uint64_t m) {
  if (a < 0) {
    if (m % 2 == 0) return std::nullopt;
    auto r = exact_iroot(-a, m);
    if (!r) return std::nullopt;
    return -*r;
  }
  Int r = iroot(a, m);
  if (ipow(r, m) == a) return r;
  return std::nullopt;
}

// Exact m-th root of a rational.  Even m: argument must be > 0; root is the
// positive one.  Odd m: sign carries through.
inline std::optional<Rat> exact_root_rat(const Rat& a, std::uint64_t m) {
  if (a == 0) return Rat(0);
  if (m % 2 == 0 && a < 0) return std::nullopt;
  auto rn = exact_iroot(boost::multiprecision::numerator(a), m);
  if (!rn) return std::nullopt;
  auto rd = exact_iroot(boost::multiprecision::denominator(a), m);
  if (!rd) return std::nullopt;
  return Rat(*rn, *rd);
}

inline Int normalize_mod(Int a, const Int& p) {
  a %= p;
  if (a < 0) a += p;
  return a;
}

inline Int modpow(const Int& base, const Int& e, const Int& p) {
  if (e < 0) throw OutOfRange("modpow with negative exponent");
  if (p == 1) return 0;
  return boost::multiprecision::powm(normalize_mod(base, p), e, p);
}

// Inverse of a modulo p via extended Euclid; modulus 1 yields 0.
inline Int modinv(Int a, const Int& p) {
  if (p == 1) return 0;
  a = normalize_mod(a, p);
  Int r0 = p, r1 = a, s0 = 0, s1 = 1;
  while (r1 != 0) {
    Int q = r0 / r1;
    Int r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    Int s2 = s0 - q * s1;
    s0 = s1;
    s1 = s2;
  }
  if (r0 != 1) throw DivisionByZero("no modular inverse: gcd != 1");
  return normalize_mod(s0, p);
}

inline std::vector<std::pair<std::uint64_t, unsigned>> factor_u64(
    std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    if (n % d) continue;
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

namespace detail {

// One solution of x^ell = a mod p with ell prime, p an odd prime, a in [1, p).
// Adleman-Manders-Miller with a deterministic non-residue scan.
inline std::optional<Int> prime_root_mod(const Int& a, std::uint64_t ell,
                                         const Int& p) {
  const Int G = p - 1;
  const Int L = Int(ell);
  if (G % L != 0) return modpow(a, modinv(L % G, G), p);
  if (modpow(a, G / L, p) != 1) return std::nullopt;
  Int t = G;
  unsigned s = 0;
  while (t % L == 0) {
    t /= L;
    ++s;
  }
  Int c = 2;
  while (modpow(c, G / L, p) == 1) ++c;
  const Int xi = modpow(c, t, p);  // order ell^s
  const Int alpha = (t == 1) ? Int(0) : modinv(L % t, t);
  const Int x0 = modpow(a, alpha, p);
  Int z = normalize_mod(a * modinv(modpow(x0, L, p), p), p);
  if (s == 1) return (z == 1) ? std::optional<Int>(x0) : std::nullopt;
  // Solve gamma^D = z in the subgroup of order ell^(s-1), digit by digit.
  const Int gamma = modpow(xi, L, p);
  const Int omega = modpow(xi, ipow(L, s - 1), p);  // order ell
  const unsigned k = s - 1;
  Int D = 0, ell_pow = 1;
  for (unsigned i = 0; i < k; ++i) {
    Int w = modpow(normalize_mod(z * modinv(modpow(gamma, D, p), p), p),
                   ipow(L, k - 1 - i), p);
    Int od = 1;
    std::uint64_t dig = 0;
    while (od != w) {
      od = normalize_mod(od * omega, p);
      if (++dig >= ell) return std::nullopt;
    }
    D += Int(dig) * ell_pow;
    ell_pow *= L;
  }
  return normalize_mod(x0 * modpow(xi, D, p), p);
}

// All ell-th roots of a mod p (ell prime): one root times the group of ell-th
// roots of unity.
inline std::vector<Int> all_prime_roots_mod(const Int& a, std::uint64_t ell,
                                            const Int& p) {
  auto r = prime_root_mod(a, ell, p);
  if (!r) return {};
  std::vector<Int> out{*r};
  const Int G = p - 1;
  if (G % Int(ell) == 0) {
    Int c = 2;
    while (modpow(c, G / Int(ell), p) == 1) ++c;
    const Int zeta = modpow(c, G / Int(ell), p);
    Int cur = *r;
    for (std::uint64_t k = 1; k < ell; ++k) {
      cur = normalize_mod(cur * zeta, p);
      out.push_back(cur);
    }
  }
  return out;
}

}  // namespace detail

// Least x in [0, p) with x^m = a mod p, if one exists.  p must be prime.
inline std::optional<Int> mod_nth_root(Int a, std::uint64_t m, const Int& p) {
  if (m == 0) throw OutOfRange("mod_nth_root with exponent 0");
  if (!is_prime(p)) throw BadPrime("modulus is not prime");
  a = normalize_mod(a, p);
  if (a == 0) return Int(0);
  if (p == 2) return Int(1);
  const Int G = p - 1;
  Int mr_big = Int(m) % G;
  if (mr_big == 0) return (a == 1) ? std::optional<Int>(Int(1)) : std::nullopt;
  const std::uint64_t mr = mr_big.convert_to<std::uint64_t>();
  std::vector<Int> xs{a};
  for (auto [ell, e] : factor_u64(mr)) {
    for (unsigned i = 0; i < e; ++i) {
      std::vector<Int> next;
      for (const Int& x : xs)
        for (const Int& r : detail::all_prime_roots_mod(x, ell, p))
          next.push_back(r);
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      if (next.empty()) return std::nullopt;
      xs = std::move(next);
    }
  }
  return *std::min_element(xs.begin(), xs.end());
}

}  // namespace torcert
