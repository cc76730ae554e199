#pragma once

#include <cstdint>
#include <vector>

#include "errors.hpp"
#include "numbers.hpp"

namespace torcert {

// N = n + r with 2^(n-1) - 2 <= r <= 2^n - 2; the split is unique for N >= 3.
struct DimensionSplit {
  std::uint64_t N;
  std::uint64_t n;
  std::uint64_t r;
};

inline DimensionSplit dimension_split(std::uint64_t N) {
  if (N < 3) throw OutOfRange("need N >= 3");
  DimensionSplit out{N, 0, 0};
  int matches = 0;
  for (std::uint64_t n = 1; n <= N && n < 64; ++n) {
    const std::uint64_t r = N - n;
    const std::uint64_t lo = (std::uint64_t{1} << (n - 1)) - 2;
    const std::uint64_t hi = (std::uint64_t{1} << n) - 2;
    if ((n == 1 ? r == 0 : r >= lo) && r <= hi) {
      out.n = n;
      out.r = r;
      ++matches;
    }
  }
  if (matches != 1) throw Error("dimension split is not unique");
  return out;
}

inline Int factorial_upper(std::uint64_t d) { return factorial(d); }

inline std::uint64_t ceil_log2(std::uint64_t N) {
  if (N == 0) throw OutOfRange("log of zero");
  std::uint64_t k = 0;
  while ((std::uint64_t{1} << k) < N && k < 63) ++k;
  return k;
}

inline void check_characteristic(const Int& chr) {
  if (chr < 0 || (chr != 0 && !is_prime(chr)))
    throw BadChar("characteristic must be zero or a prime");
}

// A certified divisor m <= d - n (split rule) or with N <= 2^(d-m)
// (log2 rule); entries carry both qualifications.
struct DivisorEntry {
  std::uint64_t m;
  bool by_split;
  bool by_log2;
};

inline std::vector<DivisorEntry> threshold_divisors(std::uint64_t N,
                                                    std::uint64_t d,
                                                    const Int& chr) {
  check_characteristic(chr);
  const DimensionSplit split = dimension_split(N);
  std::vector<DivisorEntry> out;
  for (std::uint64_t m = 2; m <= d; ++m) {
    if (chr != 0 && Int(m) % chr == 0) continue;
    const bool by_split = m + split.n <= d;
    const std::uint64_t gap = d >= m ? d - m : 0;
    const bool by_log2 = d >= m && (gap >= 64 || N <= (std::uint64_t{1} << gap));
    if (by_split || by_log2) out.push_back({m, by_split, by_log2});
  }
  return out;
}

// Prime powers p^j <= d with d >= p^j * ceil((N+2)/(p^j+1)), p odd or N
// even; characteristic-zero certificates only.
struct PrimePowerEntry {
  std::uint64_t p;
  std::uint64_t j;
  std::uint64_t value;
};

inline std::vector<PrimePowerEntry> prime_power_divisors(std::uint64_t N,
                                                         std::uint64_t d) {
  if (N < 3 || d < 2) throw OutOfRange("need N >= 3 and d >= 2");
  std::vector<PrimePowerEntry> out;
  for (std::uint64_t p = 2; p <= d; ++p) {
    if (!is_prime(Int(p))) continue;
    if (p == 2 && N % 2 != 0) continue;
    std::uint64_t value = 1;
    for (std::uint64_t j = 1;; ++j) {
      if (value > d / p) break;
      value *= p;
      const Int needed = Int(value) * ceil_div(Int(N + 2), Int(value + 1));
      if (needed <= Int(d)) out.push_back({p, j, value});
    }
  }
  return out;
}

struct BoundReport {
  std::uint64_t N;
  std::uint64_t d;
  Int chr;
  bool fano_valid;
  DimensionSplit split;
  std::vector<DivisorEntry> divisors;
  std::vector<PrimePowerEntry> prime_powers;
  Int combined;
  Int upper;
  bool combined_divides_upper;
};

// Combines both certificate families into one lcm, gated by the Fano
// condition 4 <= d <= N + 1; the d! upper bound is reported regardless.
inline BoundReport divisor_report(std::uint64_t N, std::uint64_t d,
                                  const Int& chr = Int(0)) {
  check_characteristic(chr);
  if (d < 1) throw OutOfRange("need d >= 1");
  BoundReport rep{N,  d,  chr, false, dimension_split(N), {}, {},
                  Int(1), factorial_upper(d), false};
  rep.fano_valid = d >= 4 && d <= N + 1;
  if (rep.fano_valid) {
    rep.divisors = threshold_divisors(N, d, chr);
    if (chr == 0) rep.prime_powers = prime_power_divisors(N, d);
    for (const auto& e : rep.divisors)
      rep.combined = boost::multiprecision::lcm(rep.combined, Int(e.m));
    for (const auto& e : rep.prime_powers)
      rep.combined = boost::multiprecision::lcm(rep.combined, Int(e.value));
  }
  rep.combined_divides_upper = rep.upper % rep.combined == 0;
  if (!rep.combined_divides_upper)
    throw Error("combined certificate fails to divide the upper bound");
  return rep;
}

// Minimal certified degrees for the m:1 cover in dimension N.
struct CyclicBound {
  std::uint64_t N;
  std::uint64_t m;
  std::uint64_t n;
  std::uint64_t epsilon;       // 1 when m divides n, n-1, or n-2; else 2
  Int min_degree;              // m * (ceil((n+1)/m) + epsilon)
  Int min_degree_log;          // m * (ceil((ceil_log2(N)+1)/m) + 2)
};

inline CyclicBound cyclic_thresholds(std::uint64_t N, std::uint64_t m) {
  if (m < 2) throw OutOfRange("need m >= 2");
  const DimensionSplit split = dimension_split(N);
  const std::uint64_t n = split.n;
  const bool eps1 = n % m == 0 || (n >= 1 && (n - 1) % m == 0) ||
                    (n >= 2 && (n - 2) % m == 0);
  const std::uint64_t epsilon = eps1 ? 1 : 2;
  CyclicBound out{N, m, n, epsilon, Int(0), Int(0)};
  out.min_degree = Int(m) * (ceil_div(Int(n + 1), Int(m)) + Int(epsilon));
  out.min_degree_log =
      Int(m) * (ceil_div(Int(ceil_log2(N) + 1), Int(m)) + Int(2));
  return out;
}

// The three exponent margins of the branch equation in degree d:
// positive head and tail margins, non-negative middle margin (vacuous
// when r < 2 leaves no middle coefficients).  The middle margin is taken
// at the worst admissible coefficient degree n - 1, so the report is
// exactly the certified threshold test: it holds at the minimal degree
// and fails m below it.
struct ExponentReport {
  long long head;
  bool middle_applies;
  long long middle_min;
  long long tail;
  bool pass;
};

inline ExponentReport cyclic_exponent_report(std::uint64_t N, std::uint64_t d,
                                             std::uint64_t m) {
  if (m < 2) throw OutOfRange("need m >= 2");
  const DimensionSplit split = dimension_split(N);
  const long long n = static_cast<long long>(split.n);
  const long long deg_g =
      static_cast<long long>(m) *
      static_cast<long long>(ceil_div(Int(n + 1), Int(m)).convert_to<long long>());
  const long long dd = static_cast<long long>(d);
  const long long mm = static_cast<long long>(m);
  ExponentReport rep{dd - deg_g - mm + 1, split.r >= 2, 0, dd - mm - n + 1,
                     false};
  if (rep.middle_applies) rep.middle_min = dd - 2 * mm + 1 - (n - 1);
  rep.pass = rep.head > 0 && (!rep.middle_applies || rep.middle_min >= 0) &&
             rep.tail > 0;
  return rep;
}

// Dimensions n >= 2 with 2^n >= m + 1 and n <= N + 1 - m: the window in
// which an order-m class survives on an N-dimensional very general member.
inline std::vector<std::uint64_t> order_dimension_range(std::uint64_t N,
                                                        std::uint64_t m) {
  if (m < 2 || N < 2) throw OutOfRange("need m >= 2 and N >= 2");
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 2; n + m <= N + 1; ++n)
    if (n >= 63 || (std::uint64_t{1} << n) >= m + 1) out.push_back(n);
  return out;
}

}  // namespace torcert
