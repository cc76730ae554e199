#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "fields.hpp"

namespace torcert {

inline bool valid_variable_name(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_')
    return false;
  for (char ch : s)
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_')
      return false;
  return true;
}

// Immutable declaration of a variable list over a coefficient field.  A subset
// of the variables may be flagged as unit parameters: they are invertible,
// every m-th root of them is available on demand, and they carry weight zero
// in the grading (so equations stay homogeneous in the coordinates even when
// a transcendental parameter multiplies some terms).
template <class F>
class Context {
 public:
  using Field = F;

  Context(F field, std::vector<std::string> variables,
          std::vector<std::string> unit_params = {})
      : data_(std::make_shared<const Data>(
            make_data(std::move(field), std::move(variables), unit_params))) {}

  const F& field() const { return data_->field; }
  std::size_t size() const { return data_->names.size(); }
  const std::string& name(std::size_t i) const { return data_->names.at(i); }
  const std::vector<std::string>& names() const { return data_->names; }
  bool is_unit_param(std::size_t i) const { return data_->unit_mask[i] != 0; }
  const std::vector<char>& unit_mask() const { return data_->unit_mask; }

  std::optional<std::size_t> find(const std::string& n) const {
    auto it = data_->index.find(n);
    if (it == data_->index.end()) return std::nullopt;
    return it->second;
  }

  std::size_t index_of(const std::string& n) const {
    auto i = find(n);
    if (!i) throw UnknownVariable(n);
    return *i;
  }

  bool operator==(const Context& o) const {
    if (data_ == o.data_) return true;
    return data_->names == o.data_->names &&
           data_->unit_mask == o.data_->unit_mask &&
           data_->field == o.data_->field;
  }
  bool operator!=(const Context& o) const { return !(*this == o); }

 private:
  struct Data {
    F field;
    std::vector<std::string> names;
    std::vector<char> unit_mask;
    std::map<std::string, std::size_t> index;
  };

  static Data make_data(F field, std::vector<std::string> names,
                        const std::vector<std::string>& unit_params) {
    Data d{std::move(field), std::move(names), {}, {}};
    d.unit_mask.assign(d.names.size(), 0);
    for (std::size_t i = 0; i < d.names.size(); ++i) {
      if (!valid_variable_name(d.names[i]))
        throw SyntaxError("invalid variable name: " + d.names[i], 0);
      if (!d.index.emplace(d.names[i], i).second)
        throw DuplicateVariable(d.names[i]);
    }
    for (const auto& u : unit_params) {
      auto it = d.index.find(u);
      if (it == d.index.end()) throw UnknownVariable(u);
      d.unit_mask[it->second] = 1;
    }
    return d;
  }

  std::shared_ptr<const Data> data_;
};

// Exponent vector over a fixed context; every context variable has a slot.
struct Monomial {
  std::vector<unsigned> e;

  bool operator==(const Monomial& o) const { return e == o.e; }
  bool operator!=(const Monomial& o) const { return e != o.e; }

  bool is_constant() const {
    return std::all_of(e.begin(), e.end(), [](unsigned k) { return k == 0; });
  }

  // Grading degree: unit parameters weigh zero.
  std::uint64_t degree(const std::vector<char>& unit_mask) const {
    std::uint64_t d = 0;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (!unit_mask[i]) d += e[i];
    return d;
  }

  std::uint64_t total_degree() const {
    std::uint64_t d = 0;
    for (unsigned k : e) d += k;
    return d;
  }

  static Monomial unit(std::size_t nvars) {
    return Monomial{std::vector<unsigned>(nvars, 0)};
  }

  Monomial times(const Monomial& o) const {
    Monomial r = *this;
    for (std::size_t i = 0; i < e.size(); ++i) r.e[i] += o.e[i];
    return r;
  }

  bool divisible_by(const Monomial& o) const {
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] < o.e[i]) return false;
    return true;
  }

  Monomial divided_by(const Monomial& o) const {
    Monomial r = *this;
    for (std::size_t i = 0; i < e.size(); ++i) r.e[i] -= o.e[i];
    return r;
  }
};

// Graded-lexicographic comparison (grading excludes unit parameters; ties by
// the exponent vector in declared variable order).  Returns <0, 0, >0.
inline int monomial_cmp(const Monomial& a, const Monomial& b,
                        const std::vector<char>& unit_mask) {
  std::uint64_t da = a.degree(unit_mask), db = b.degree(unit_mask);
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = 0; i < a.e.size(); ++i)
    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? -1 : 1;
  return 0;
}

namespace detail {

// Coefficient printing hooks: over the rationals the sign is syntactic; over
// a prime field every residue prints as-is with '+' separators.
inline bool coeff_negative(const RationalField&, const Rat& c) { return c < 0; }
inline bool coeff_negative(const PrimeField&, const Int&) { return false; }
inline std::string coeff_magnitude(const RationalField& f, const Rat& c) {
  return f.str(c < 0 ? Rat(-c) : c);
}
inline std::string coeff_magnitude(const PrimeField& f, const Int& c) {
  return f.str(c);
}
inline bool coeff_magnitude_one(const RationalField&, const Rat& c) {
  return c == 1 || c == -1;
}
inline bool coeff_magnitude_one(const PrimeField&, const Int& c) {
  return c == 1;
}

}  // namespace detail

template <class F>
class Polynomial {
 public:
  using Field = F;
  using Elem = typename F::Elem;

  struct Term {
    Monomial mono;
    Elem coeff;
  };

  explicit Polynomial(Context<F> ctx) : ctx_(std::move(ctx)) {}

  static Polynomial zero(const Context<F>& ctx) { return Polynomial(ctx); }

  static Polynomial constant(const Context<F>& ctx, const Elem& c) {
    Polynomial p(ctx);
    if (!ctx.field().is_zero(c))
      p.terms_.push_back(Term{Monomial::unit(ctx.size()), c});
    return p;
  }

  static Polynomial one(const Context<F>& ctx) {
    return constant(ctx, ctx.field().one());
  }

  static Polynomial variable(const Context<F>& ctx, std::size_t i,
                             unsigned exp = 1) {
    if (i >= ctx.size()) throw IndexOutOfRange("variable index out of range");
    Polynomial p(ctx);
    if (exp == 0) return one(ctx);
    Monomial m = Monomial::unit(ctx.size());
    m.e[i] = exp;
    p.terms_.push_back(Term{std::move(m), ctx.field().one()});
    return p;
  }

  static Polynomial variable(const Context<F>& ctx, const std::string& name,
                             unsigned exp = 1) {
    return variable(ctx, ctx.index_of(name), exp);
  }

  static Polynomial from_terms(const Context<F>& ctx,
                               std::vector<Term> terms) {
    Polynomial p(ctx);
    p.terms_ = std::move(terms);
    p.canonicalize();
    return p;
  }

  const Context<F>& context() const { return ctx_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  bool operator==(const Polynomial& o) const {
    if (ctx_ != o.ctx_ || terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
      if (terms_[i].mono != o.terms_[i].mono ||
          !ctx_.field().eq(terms_[i].coeff, o.terms_[i].coeff))
        return false;
    return true;
  }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  // Grading degree (unit parameters weigh zero); -1 for the zero polynomial.
  long long degree() const {
    long long d = -1;
    for (const auto& t : terms_)
      d = std::max(d, (long long)t.mono.degree(ctx_.unit_mask()));
    return d;
  }

  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    auto d0 = terms_.front().mono.degree(ctx_.unit_mask());
    for (const auto& t : terms_)
      if (t.mono.degree(ctx_.unit_mask()) != d0) return false;
    return true;
  }

  const Term& leading_term() const {
    if (terms_.empty()) throw ZeroInput("leading term of zero polynomial");
    return terms_.front();
  }

  Elem coefficient_of(const Monomial& m) const {
    for (const auto& t : terms_)
      if (t.mono == m) return t.coeff;
    return ctx_.field().zero();
  }

  unsigned max_exponent_of(std::size_t var) const {
    unsigned k = 0;
    for (const auto& t : terms_) k = std::max(k, t.mono.e[var]);
    return k;
  }

  bool contains_variable(std::size_t var) const {
    for (const auto& t : terms_)
      if (t.mono.e[var] > 0) return true;
    return false;
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coeff = ctx_.field().neg(t.coeff);
    return r;
  }

  Polynomial operator+(const Polynomial& o) const {
    check_same_context(o);
    Polynomial r(ctx_);
    const auto& f = ctx_.field();
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
      int c;
      if (i >= terms_.size())
        c = -1;
      else if (j >= o.terms_.size())
        c = 1;
      else
        c = monomial_cmp(terms_[i].mono, o.terms_[j].mono, ctx_.unit_mask());
      if (c > 0) {
        r.terms_.push_back(terms_[i++]);
      } else if (c < 0) {
        r.terms_.push_back(o.terms_[j++]);
      } else {
        Elem s = f.add(terms_[i].coeff, o.terms_[j].coeff);
        if (!f.is_zero(s)) r.terms_.push_back(Term{terms_[i].mono, s});
        ++i;
        ++j;
      }
    }
    return r;
  }

  Polynomial operator-(const Polynomial& o) const { return *this + (-o); }

  Polynomial operator*(const Polynomial& o) const {
    check_same_context(o);
    const auto& f = ctx_.field();
    std::map<Monomial, Elem, MonoDesc> acc(MonoDesc{&ctx_.unit_mask()});
    for (const auto& a : terms_)
      for (const auto& b : o.terms_) {
        Monomial m = a.mono.times(b.mono);
        Elem c = f.mul(a.coeff, b.coeff);
        auto [it, fresh] = acc.emplace(std::move(m), c);
        if (!fresh) it->second = f.add(it->second, c);
      }
    Polynomial r(ctx_);
    for (auto& [m, c] : acc)
      if (!f.is_zero(c)) r.terms_.push_back(Term{m, c});
    return r;
  }

  // Multiplication by a single term, preserving canonical order.
  Polynomial times_term(const Monomial& m, const Elem& c) const {
    const auto& f = ctx_.field();
    if (f.is_zero(c)) return zero(ctx_);
    Polynomial r(ctx_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
      Elem nc = f.mul(t.coeff, c);
      if (!f.is_zero(nc)) r.terms_.push_back(Term{t.mono.times(m), nc});
    }
    return r;
  }

  Polynomial scaled(const Elem& c) const {
    const auto& f = ctx_.field();
    if (f.is_zero(c)) return zero(ctx_);
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coeff = f.mul(t.coeff, c);
    return r;
  }

  Polynomial pow(std::uint64_t k) const {
    Polynomial base = *this, r = one(ctx_);
    while (k) {
      if (k & 1) r = r * base;
      k >>= 1;
      if (k) base = base * base;
    }
    return r;
  }

  // Simultaneous substitution into a target context.  Variables without an
  // image must exist under the same name in the target.
  Polynomial substitute(
      const Context<F>& target,
      const std::map<std::string, Polynomial>& images) const {
    if (!(ctx_.field() == target.field()))
      throw FieldMismatch("substitution must preserve the coefficient field");
    for (const auto& [name, img] : images) {
      ctx_.index_of(name);  // must be a source variable
      if (img.context() != target)
        throw ContextMismatch("image of " + name +
                              " lives in a different context");
    }
    std::vector<const Polynomial*> image_of(ctx_.size(), nullptr);
    std::vector<std::optional<std::size_t>> rename(ctx_.size());
    for (std::size_t i = 0; i < ctx_.size(); ++i) {
      auto it = images.find(ctx_.name(i));
      if (it != images.end()) image_of[i] = &it->second;
    }
    Polynomial out = zero(target);
    for (const auto& t : terms_) {
      Polynomial term = constant(target, t.coeff);
      for (std::size_t i = 0; i < ctx_.size(); ++i) {
        unsigned e = t.mono.e[i];
        if (e == 0) continue;
        if (image_of[i]) {
          term = term * image_of[i]->pow(e);
        } else {
          if (!rename[i]) rename[i] = target.index_of(ctx_.name(i));
          term = term * variable(target, *rename[i], e);
        }
      }
      out = out + term;
    }
    return out;
  }

  Polynomial substitute(const std::map<std::string, Polynomial>& images) const {
    return substitute(ctx_, images);
  }

  // Transport into a context that declares (at least) the same variable
  // names; purely a relabeling of slots.
  Polynomial transport(const Context<F>& target) const {
    if (!(ctx_.field() == target.field()))
      throw FieldMismatch("transport must preserve the coefficient field");
    std::vector<std::size_t> slot(ctx_.size());
    std::vector<bool> used(ctx_.size(), false);
    Polynomial out(target);
    for (const auto& t : terms_) {
      Monomial m = Monomial::unit(target.size());
      for (std::size_t i = 0; i < ctx_.size(); ++i) {
        if (t.mono.e[i] == 0) continue;
        if (!used[i]) {
          slot[i] = target.index_of(ctx_.name(i));
          used[i] = true;
        }
        m.e[slot[i]] = t.mono.e[i];
      }
      out.terms_.push_back(Term{std::move(m), t.coeff});
    }
    out.canonicalize();
    return out;
  }

  // Full evaluation; every variable occurring in the polynomial needs a value.
  Elem evaluate(const std::map<std::string, Elem>& values) const {
    const auto& f = ctx_.field();
    Elem acc = f.zero();
    for (const auto& t : terms_) {
      Elem v = t.coeff;
      for (std::size_t i = 0; i < ctx_.size(); ++i) {
        unsigned e = t.mono.e[i];
        if (e == 0) continue;
        auto it = values.find(ctx_.name(i));
        if (it == values.end()) throw UnknownVariable(ctx_.name(i));
        Elem p = f.one(), b = it->second;
        unsigned k = e;
        while (k) {
          if (k & 1) p = f.mul(p, b);
          k >>= 1;
          if (k) b = f.mul(b, b);
        }
        v = f.mul(v, p);
      }
      acc = f.add(acc, v);
    }
    return acc;
  }

  // Deletes every term containing the variable.
  Polynomial reduce_mod_variable(std::size_t var) const {
    Polynomial r(ctx_);
    for (const auto& t : terms_)
      if (t.mono.e[var] == 0) r.terms_.push_back(t);
    return r;
  }
  Polynomial reduce_mod_variable(const std::string& v) const {
    return reduce_mod_variable(ctx_.index_of(v));
  }

  Polynomial derivative(std::size_t var) const {
    const auto& f = ctx_.field();
    Polynomial r(ctx_);
    for (const auto& t : terms_) {
      unsigned e = t.mono.e[var];
      if (e == 0) continue;
      Elem c = f.mul(t.coeff, f.from_int(Int(e)));
      if (f.is_zero(c)) continue;
      Term nt{t.mono, c};
      nt.mono.e[var] -= 1;
      r.terms_.push_back(std::move(nt));
    }
    r.canonicalize();
    return r;
  }
  Polynomial derivative(const std::string& v) const {
    return derivative(ctx_.index_of(v));
  }

  // Pads every term with a power of var so the result is homogeneous of
  // degree = this->degree(); var must not occur.
  Polynomial homogenize(std::size_t var) const {
    if (contains_variable(var))
      throw VariablePresent("homogenization variable already occurs: " +
                            ctx_.name(var));
    if (ctx_.is_unit_param(var))
      throw OutOfRange("homogenization variable must not be a unit parameter");
    long long d = degree();
    Polynomial r = *this;
    for (auto& t : r.terms_) {
      std::uint64_t td = t.mono.degree(ctx_.unit_mask());
      t.mono.e[var] = static_cast<unsigned>(d - (long long)td);
    }
    r.canonicalize();
    return r;
  }
  Polynomial homogenize(const std::string& v) const {
    return homogenize(ctx_.index_of(v));
  }

  // Sets var = 1; input must be homogeneous.
  Polynomial dehomogenize(std::size_t var) const {
    if (!is_homogeneous())
      throw NotHomogeneous("dehomogenize requires a homogeneous input");
    Polynomial r = *this;
    for (auto& t : r.terms_) t.mono.e[var] = 0;
    r.canonicalize();
    return r;
  }
  Polynomial dehomogenize(const std::string& v) const {
    return dehomogenize(ctx_.index_of(v));
  }

  // Exact division by a nonzero polynomial; nullopt when not divisible.
  std::optional<Polynomial> try_divide(const Polynomial& d) const {
    check_same_context(d);
    if (d.is_zero()) throw DivisionByZero("division by zero polynomial");
    const auto& f = ctx_.field();
    Polynomial q(ctx_), r = *this;
    const Term& dl = d.leading_term();
    while (!r.is_zero()) {
      const Term& rl = r.leading_term();
      if (!rl.mono.divisible_by(dl.mono)) return std::nullopt;
      Term qt{rl.mono.divided_by(dl.mono), f.div(rl.coeff, dl.coeff)};
      Polynomial qp(ctx_);
      qp.terms_.push_back(qt);
      r = r - qp * d;
      q.terms_.push_back(std::move(qt));
    }
    q.canonicalize();
    return q;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    const auto& f = ctx_.field();
    std::string out;
    bool first = true;
    for (const auto& t : terms_) {
      bool neg = detail::coeff_negative(f, t.coeff);
      if (first) {
        if (neg) out += "-";
        first = false;
      } else {
        out += neg ? " - " : " + ";
      }
      bool has_vars = !t.mono.is_constant();
      bool mag_one = detail::coeff_magnitude_one(f, t.coeff);
      if (!has_vars || !mag_one) out += detail::coeff_magnitude(f, t.coeff);
      bool need_star = !mag_one && has_vars;
      for (std::size_t i = 0; i < ctx_.size(); ++i) {
        unsigned e = t.mono.e[i];
        if (e == 0) continue;
        if (need_star) out += "*";
        out += ctx_.name(i);
        if (e >= 2) out += "^" + std::to_string(e);
        need_star = true;
      }
    }
    return out;
  }

 private:
  struct MonoDesc {
    const std::vector<char>* unit_mask;
    bool operator()(const Monomial& a, const Monomial& b) const {
      return monomial_cmp(a, b, *unit_mask) > 0;
    }
  };

  void check_same_context(const Polynomial& o) const {
    if (ctx_ != o.ctx_)
      throw ContextMismatch("operands declared over different contexts");
  }

  void canonicalize() {
    const auto& f = ctx_.field();
    std::stable_sort(terms_.begin(), terms_.end(),
                     [this](const Term& a, const Term& b) {
                       return monomial_cmp(a.mono, b.mono, ctx_.unit_mask()) >
                              0;
                     });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().mono == t.mono)
        out.back().coeff = f.add(out.back().coeff, t.coeff);
      else
        out.push_back(std::move(t));
      if (!out.empty() && f.is_zero(out.back().coeff)) out.pop_back();
    }
    // Equal monomials are adjacent after sorting, so one merge pass suffices
    // even across zero-sum runs.
    terms_ = std::move(out);
  }

  Context<F> ctx_;
  std::vector<Term> terms_;
};

template <class F>
std::string monomial_string(const Context<F>& ctx, const Monomial& m) {
  if (m.is_constant()) return "1";
  std::string out;
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    unsigned e = m.e[i];
    if (e == 0) continue;
    if (!out.empty()) out += "*";
    out += ctx.name(i);
    if (e >= 2) out += "^" + std::to_string(e);
  }
  return out;
}

using PolyQ = Polynomial<RationalField>;
using PolyP = Polynomial<PrimeField>;
using ContextQ = Context<RationalField>;
using ContextP = Context<PrimeField>;

}  // namespace torcert
