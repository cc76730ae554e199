#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "fields.hpp"
#include "hypersurface.hpp"
#include "numbers.hpp"
#include "polynomial.hpp"
#include "roots.hpp"

namespace torcert {

// Outcome of a finite-field scan or a randomized irreducibility check.  A
// passing smoothness report is evidence, never a proof: only the listed
// rational points were tested.
struct ProbeReport {
  std::string kind;
  std::string verdict;
  bool pass = false;
  Int q{0};
  Int points_scanned{0};
  std::string witness;
  std::uint64_t trials = 0;
  std::uint64_t squarefree_restrictions = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> notes;
};

namespace detail {

// Arithmetic in F_q for q = p or p^2 with q <= 2^20.  Elements are encoded
// as a + b*p with a, b in [0, p); the degree-two case adjoins w with
// w^2 = c1*w + c0, the first irreducible choice in (c1, c0) order.
struct ScanField {
  std::uint64_t p = 0;
  unsigned k = 1;
  std::uint64_t c0 = 0;
  std::uint64_t c1 = 0;

  std::uint64_t q() const { return k == 1 ? p : p * p; }

  static ScanField make(const Int& q_in) {
    if (q_in < 2 || q_in > Int(1) << 20)
      throw OutOfRange("scan field size must lie in [2, 2^20]");
    ScanField f;
    if (is_prime(q_in)) {
      f.p = q_in.convert_to<std::uint64_t>();
      f.k = 1;
      return f;
    }
    Int r = iroot(q_in, 2);
    if (r * r != q_in || !is_prime(r))
      throw OutOfRange("scan field size must be a prime or a prime squared");
    f.p = r.convert_to<std::uint64_t>();
    f.k = 2;
    for (std::uint64_t c1 = 0; c1 < f.p; ++c1) {
      for (std::uint64_t c0 = 0; c0 < f.p; ++c0) {
        bool has_root = false;
        for (std::uint64_t t = 0; t < f.p && !has_root; ++t)
          has_root = (t * t) % f.p == (c1 * t + c0) % f.p;
        if (!has_root) {
          f.c1 = c1;
          f.c0 = c0;
          return f;
        }
      }
    }
    throw Error("no irreducible quadratic found");  // unreachable for prime p
  }

  std::uint64_t add(std::uint64_t x, std::uint64_t y) const {
    std::uint64_t a = (x % p + y % p) % p;
    std::uint64_t b = (x / p + y / p) % p;
    return a + b * p;
  }

  std::uint64_t mul(std::uint64_t x, std::uint64_t y) const {
    std::uint64_t a0 = x % p, a1 = x / p, b0 = y % p, b1 = y / p;
    std::uint64_t lo = (a0 * b0 + ((a1 * b1) % p) * c0) % p;
    std::uint64_t hi = (a0 * b1 + a1 * b0 + ((a1 * b1) % p) * c1) % p;
    return lo + hi * p;
  }

  std::uint64_t pow(std::uint64_t x, std::uint64_t e) const {
    std::uint64_t r = 1;
    while (e > 0) {
      if (e & 1) r = mul(r, x);
      x = mul(x, x);
      e >>= 1;
    }
    return r;
  }

  std::string str(std::uint64_t x) const {
    std::uint64_t a = x % p, b = x / p;
    if (b == 0) return std::to_string(a);
    std::ostringstream os;
    os << a << "+" << b << "*w";
    return os.str();
  }
};

// A polynomial flattened for scanning: exponents over the scan variables
// only, coefficients reduced into the prime subfield.
struct ScanTerm {
  std::vector<unsigned> e;
  std::uint64_t c = 0;
};
using ScanPoly = std::vector<ScanTerm>;

inline std::uint64_t reduce_rational(const Rat& a, std::uint64_t p) {
  Int num = normalize_mod(boost::multiprecision::numerator(a), Int(p));
  Int den = normalize_mod(boost::multiprecision::denominator(a), Int(p));
  if (den == 0)
    throw FieldMismatch("coefficient denominator vanishes modulo " +
                        std::to_string(p));
  return ((num * modinv(den, Int(p))) % Int(p)).convert_to<std::uint64_t>();
}

template <class F>
std::uint64_t reduce_coefficient(const F& field, const typename F::Elem& c,
                                 std::uint64_t p) {
  if constexpr (std::is_same_v<F, RationalField>) {
    (void)field;
    return reduce_rational(c, p);
  } else {
    if (field.characteristic() != Int(p))
      throw FieldMismatch("polynomial characteristic does not match the scan field");
    return c.template convert_to<std::uint64_t>();
  }
}

// Substitutes the unit-parameter assignments, reduces every coefficient into
// F_p, and rewrites the exponents over the remaining coordinates.
template <class F>
ScanPoly reduce_equation(const Polynomial<F>& eq, const ScanField& fq,
                         const std::map<std::string, Int>& assignments,
                         std::vector<std::string>& coordinates) {
  const Context<F>& ctx = eq.context();
  std::vector<std::size_t> scan_index;
  std::vector<std::uint64_t> unit_value(ctx.size(), 0);
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    if (!ctx.is_unit_param(i)) {
      scan_index.push_back(i);
      coordinates.push_back(ctx.name(i));
      continue;
    }
    auto it = assignments.find(ctx.name(i));
    if (it == assignments.end())
      throw FieldMismatch("no assignment for unit parameter " + ctx.name(i));
    Int v = normalize_mod(it->second, Int(fq.p));
    if (v == 0)
      throw OutOfRange("unit parameter " + ctx.name(i) +
                       " must be assigned a unit");
    unit_value[i] = v.convert_to<std::uint64_t>();
  }
  for (const auto& [key, value] : assignments) {
    (void)value;
    std::size_t i = ctx.index_of(key);
    if (!ctx.is_unit_param(i))
      throw OutOfRange("assignment target " + key + " is not a unit parameter");
  }

  std::map<std::vector<unsigned>, std::uint64_t> acc;
  for (const auto& term : eq.terms()) {
    std::uint64_t c = reduce_coefficient(ctx.field(), term.coeff, fq.p);
    std::vector<unsigned> e(scan_index.size(), 0);
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      if (term.mono.e[i] == 0) continue;
      if (ctx.is_unit_param(i)) {
        c = (c * modpow(Int(unit_value[i]), Int(term.mono.e[i]), Int(fq.p))
                     .convert_to<std::uint64_t>()) %
            fq.p;
      }
    }
    for (std::size_t j = 0; j < scan_index.size(); ++j)
      e[j] = term.mono.e[scan_index[j]];
    auto [it, fresh] = acc.emplace(std::move(e), c);
    if (!fresh) it->second = (it->second + c) % fq.p;
  }
  ScanPoly out;
  for (auto& [e, c] : acc)
    if (c % fq.p != 0) out.push_back(ScanTerm{e, c % fq.p});
  return out;
}

template <class F>
Polynomial<F> partial_derivative(const Polynomial<F>& p, std::size_t var) {
  const Context<F>& ctx = p.context();
  std::vector<typename Polynomial<F>::Term> terms;
  for (const auto& t : p.terms()) {
    if (t.mono.e[var] == 0) continue;
    typename Polynomial<F>::Term d = t;
    d.coeff = ctx.field().mul(d.coeff, ctx.field().from_int(Int(d.mono.e[var])));
    --d.mono.e[var];
    if (!ctx.field().is_zero(d.coeff)) terms.push_back(std::move(d));
  }
  return Polynomial<F>::from_terms(ctx, terms);
}

inline std::uint64_t scan_eval(const ScanPoly& p, const ScanField& fq,
                               const std::vector<std::uint64_t>& point) {
  std::uint64_t sum = 0;
  for (const auto& t : p) {
    std::uint64_t v = t.c;
    for (std::size_t j = 0; j < point.size() && v != 0; ++j)
      if (t.e[j] > 0) v = fq.mul(v, fq.pow(point[j], t.e[j]));
    sum = fq.add(sum, v);
  }
  return sum;
}

}  // namespace detail

// Enumerates every F_q-rational point of the ambient projective space and
// evaluates the equation together with the partials with respect to every
// declared variable, unit parameters included; the scan therefore tests the
// family near the assigned parameter values.  A clean scan is a desk-scale
// consistency check; it does not certify smoothness.
template <class F>
ProbeReport smoothness_probe(const HypersurfaceSpec<F>& spec, const Int& q,
                             const std::map<std::string, Int>& assignments) {
  auto fq = detail::ScanField::make(q);
  std::vector<std::string> coordinates;
  auto reduced =
      detail::reduce_equation(spec.equation, fq, assignments, coordinates);
  const std::size_t V = coordinates.size();
  if (V < 2) throw OutOfRange("the scan needs at least two coordinates");

  Int qq(fq.q());
  Int total = (ipow(qq, V) - 1) / (qq - 1);
  if (total > Int(100000000))
    throw AmbientTooLarge("projective point count " + total.str() +
                          " exceeds 10^8");

  std::vector<detail::ScanPoly> partials;
  partials.reserve(spec.ctx.size());
  for (std::size_t i = 0; i < spec.ctx.size(); ++i) {
    auto dp = detail::partial_derivative(spec.equation, i);
    std::vector<std::string> ignore;
    partials.push_back(detail::reduce_equation(dp, fq, assignments, ignore));
  }

  ProbeReport rep;
  rep.kind = "smoothness";
  rep.q = qq;
  rep.notes.push_back(
      "a clean scan over F_" + qq.str() +
      " is a consistency check, not a proof of smoothness");
  if (!assignments.empty())
    rep.notes.push_back(
        "partials include the unit parameters; the scan tests the family "
        "near the assigned values");
  if (fq.k == 2)
    rep.notes.push_back("w generates the quadratic extension with w^2 = " +
                        std::to_string(fq.c1) + "*w + " +
                        std::to_string(fq.c0));

  bool found = false;
  std::vector<std::uint64_t> least;
  std::vector<std::uint64_t> point(V, 0);
  Int scanned = 0;
  for (std::size_t chart = V; chart-- > 0;) {
    std::fill(point.begin(), point.end(), 0);
    point[chart] = 1;
    while (true) {
      ++scanned;
      if (detail::scan_eval(reduced, fq, point) == 0) {
        bool singular = true;
        for (const auto& dp : partials) {
          if (detail::scan_eval(dp, fq, point) != 0) {
            singular = false;
            break;
          }
        }
        if (singular && !found) {
          found = true;
          least = point;
        }
      }
      std::size_t pos = V;
      bool advanced = false;
      while (pos > chart + 1) {
        --pos;
        if (++point[pos] < fq.q()) {
          advanced = true;
          break;
        }
        point[pos] = 0;
      }
      if (!advanced) break;
    }
  }
  if (scanned != total) throw Error("scan did not cover the projective space");
  rep.points_scanned = scanned;
  if (found) {
    rep.verdict = "SingularPoint";
    rep.pass = false;
    std::ostringstream os;
    os << "(";
    for (std::size_t j = 0; j < V; ++j) {
      if (j) os << " : ";
      os << fq.str(least[j]);
    }
    os << ")";
    rep.witness = os.str();
  } else {
    rep.verdict = "NoSingularPointFound";
    rep.pass = true;
  }
  return rep;
}

namespace detail {

// Dense univariate arithmetic modulo a small prime; coefficient index is
// the power of the line parameter.
inline void uni_trim(std::vector<std::uint64_t>& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::vector<std::uint64_t> uni_mul(const std::vector<std::uint64_t>& a,
                                          const std::vector<std::uint64_t>& b,
                                          std::uint64_t rho) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint64_t> r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + a[i] * b[j]) % rho;
  }
  uni_trim(r);
  return r;
}

inline std::uint64_t uni_inv(std::uint64_t a, std::uint64_t rho) {
  return modinv(Int(a), Int(rho)).convert_to<std::uint64_t>();
}

inline void uni_reduce_by(std::vector<std::uint64_t>& a,
                          const std::vector<std::uint64_t>& b,
                          std::uint64_t rho) {
  std::uint64_t lead_inv = uni_inv(b.back(), rho);
  while (a.size() >= b.size()) {
    std::uint64_t f = (a.back() * lead_inv) % rho;
    std::size_t shift = a.size() - b.size();
    if (f != 0) {
      for (std::size_t j = 0; j < b.size(); ++j) {
        std::uint64_t sub = (f * b[j]) % rho;
        a[shift + j] = (a[shift + j] + rho - sub) % rho;
      }
    }
    a.pop_back();
    uni_trim(a);
    if (a.empty()) return;
  }
}

inline std::vector<std::uint64_t> uni_gcd(std::vector<std::uint64_t> a,
                                          std::vector<std::uint64_t> b,
                                          std::uint64_t rho) {
  uni_trim(a);
  uni_trim(b);
  while (!b.empty()) {
    uni_reduce_by(a, b, rho);
    std::swap(a, b);
  }
  return a;
}

inline std::vector<std::uint64_t> uni_derivative(
    const std::vector<std::uint64_t>& a, std::uint64_t rho) {
  std::vector<std::uint64_t> r;
  for (std::size_t i = 1; i < a.size(); ++i)
    r.push_back((a[i] * (i % rho)) % rho);
  uni_trim(r);
  return r;
}

}  // namespace detail

// Heuristic irreducibility check.  The exact parts (single-variable factors,
// perfect powers of order dividing the degree) can return a reducibility
// witness; the randomized line restrictions only accumulate squarefree
// statistics and never claim reducibility on their own.
template <class F>
ProbeReport integrality_probe(const Polynomial<F>& p, std::uint64_t trials,
                              std::uint64_t seed = 0) {
  if (p.is_zero()) throw ZeroInput("integrality probe of the zero polynomial");
  const Context<F>& ctx = p.context();

  ProbeReport rep;
  rep.kind = "integrality";
  rep.trials = trials;
  rep.seed = seed;

  long long deg = p.degree();
  if (deg >= 2) {
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      if (ctx.is_unit_param(i)) continue;
      bool divides = true;
      for (const auto& term : p.terms())
        if (term.mono.e[i] == 0) {
          divides = false;
          break;
        }
      if (divides) {
        rep.verdict = "ReducibleWitness";
        rep.pass = false;
        rep.witness = ctx.name(i);
        rep.notes.push_back("every term is divisible by " + ctx.name(i));
        return rep;
      }
    }
    for (const auto& [prime, mult] : factor_u64(static_cast<std::uint64_t>(deg))) {
      (void)mult;
      try {
        auto root = mth_root(p, prime, /*units_are_powers=*/true);
        if (root.root.degree() >= 1) {
          rep.verdict = "ReducibleWitness";
          rep.pass = false;
          rep.witness = root.root.to_string();
          rep.notes.push_back("the input is a unit times the " +
                              std::to_string(prime) + "-th power of the witness");
          return rep;
        }
      } catch (const NotAPower&) {
      }
    }
  } else {
    rep.notes.push_back("degree below two: power and variable checks are vacuous");
  }

  // Random line restrictions over a small prime field.  A reduced
  // irreducible polynomial restricts to a squarefree univariate one on most
  // lines; persistent repeated factors are reported in the notes.
  static const std::uint64_t kPrimes[] = {10007, 10009, 10037, 10039,
                                          10061, 10067, 10069, 10079};
  std::mt19937_64 rng(seed);
  std::uint64_t attempted = 0;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    std::uint64_t rho;
    if (ctx.field().characteristic() == 0) {
      rho = kPrimes[rng() % (sizeof(kPrimes) / sizeof(kPrimes[0]))];
    } else {
      if (ctx.field().characteristic() > Int(1) << 31) {
        rep.notes.push_back("characteristic too large for line restrictions");
        break;
      }
      rho = ctx.field().characteristic().template convert_to<std::uint64_t>();
    }

    std::vector<std::uint64_t> alpha(ctx.size(), 0), beta(ctx.size(), 0);
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      if (ctx.is_unit_param(i)) {
        beta[i] = 1 + rng() % (rho - 1);  // a unit value, constant on the line
      } else {
        alpha[i] = rng() % rho;
        beta[i] = rng() % rho;
      }
    }

    bool bad_coeff = false;
    std::vector<std::uint64_t> f;
    for (const auto& term : p.terms()) {
      std::uint64_t c;
      try {
        c = detail::reduce_coefficient(ctx.field(), term.coeff, rho);
      } catch (const FieldMismatch&) {
        bad_coeff = true;
        break;
      }
      std::vector<std::uint64_t> prod{c};
      for (std::size_t i = 0; i < ctx.size() && !prod.empty(); ++i) {
        unsigned e = term.mono.e[i];
        if (e == 0) continue;
        if (ctx.is_unit_param(i)) {
          std::uint64_t u =
              modpow(Int(beta[i]), Int(e), Int(rho)).convert_to<std::uint64_t>();
          prod = detail::uni_mul(prod, {u}, rho);
          continue;
        }
        std::vector<std::uint64_t> line{beta[i], alpha[i]};
        detail::uni_trim(line);
        for (unsigned rep_e = 0; rep_e < e && !prod.empty(); ++rep_e)
          prod = detail::uni_mul(prod, line, rho);
      }
      if (f.size() < prod.size()) f.resize(prod.size(), 0);
      for (std::size_t j = 0; j < prod.size(); ++j)
        f[j] = (f[j] + prod[j]) % rho;
    }
    if (bad_coeff) continue;
    detail::uni_trim(f);
    if (f.size() < 2) continue;  // the line missed the interesting locus
    ++attempted;
    auto g = detail::uni_gcd(f, detail::uni_derivative(f, rho), rho);
    if (g.size() <= 1) ++rep.squarefree_restrictions;
  }

  if (attempted > 0 && rep.squarefree_restrictions == 0)
    rep.notes.push_back(
        "no squarefree line restriction found; consistent with a repeated "
        "factor, but not a proof");
  rep.verdict = "ProbablyIrreducible";
  rep.pass = true;
  return rep;
}

}  // namespace torcert
