#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>

#include "errors.hpp"
#include "numbers.hpp"

namespace torcert {

// Exact rational arithmetic.  Elements are always stored reduced with a
// positive denominator (cpp_rational maintains this invariant).
class RationalField {
 public:
  using Elem = Rat;

  Elem zero() const { return Rat(0); }
  Elem one() const { return Rat(1); }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem inv(const Elem& a) const {
    if (a == 0) throw DivisionByZero("inverse of zero");
    return 1 / a;
  }
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
  bool is_zero(const Elem& a) const { return a == 0; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  Int characteristic() const { return 0; }
  Elem from_int(const Int& n) const { return Rat(n); }
  Elem from_parts(const Int& num, const Int& den) const {
    if (den == 0) throw DivisionByZero("zero denominator");
    return Rat(num, den);
  }

  std::optional<Elem> nth_root(const Elem& a, std::uint64_t m) const {
    return exact_root_rat(a, m);
  }

  std::string str(const Elem& a) const {
    std::ostringstream os;
    os << a;
    return os.str();
  }

  bool operator==(const RationalField&) const { return true; }
};

// Prime field with elements stored as least non-negative residues.
class PrimeField {
 public:
  using Elem = Int;

  explicit PrimeField(const Int& p) : p_(p) {
    if (!is_prime(p)) throw BadPrime("characteristic must be prime");
  }

  const Int& prime() const { return p_; }

  Elem zero() const { return Int(0); }
  Elem one() const { return Int(1); }
  Elem add(const Elem& a, const Elem& b) const {
    Int r = a + b;
    if (r >= p_) r -= p_;
    return r;
  }
  Elem sub(const Elem& a, const Elem& b) const {
    Int r = a - b;
    if (r < 0) r += p_;
    return r;
  }
  Elem mul(const Elem& a, const Elem& b) const { return (a * b) % p_; }
  Elem neg(const Elem& a) const { return a == 0 ? a : Elem(p_ - a); }
  Elem inv(const Elem& a) const {
    if (a == 0) throw DivisionByZero("inverse of zero");
    return modinv(a, p_);
  }
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
  bool is_zero(const Elem& a) const { return a == 0; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  Int characteristic() const { return p_; }
  Elem from_int(const Int& n) const { return normalize_mod(n, p_); }
  Elem from_parts(const Int& num, const Int& den) const {
    return div(from_int(num), from_int(den));
  }

  std::optional<Elem> nth_root(const Elem& a, std::uint64_t m) const {
    return mod_nth_root(a, m, p_);
  }

  std::string str(const Elem& a) const { return a.str(); }

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

 private:
  Int p_;
};

}  // namespace torcert
