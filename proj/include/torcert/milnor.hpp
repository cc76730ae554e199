#pragma once

#include <cctype>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "errors.hpp"
#include "hypersurface.hpp"
#include "parse.hpp"
#include "polynomial.hpp"

namespace torcert {

// A symbol of degree n modulo m: an ordered tuple of nonzero entries.
template <class F>
struct Symbol {
  std::uint64_t m;
  std::vector<Polynomial<F>> entries;
};

// Witness that a symbol vanishes: its entries sum to an exact m-th power.
template <class F>
struct SteinbergWitness {
  std::vector<Polynomial<F>> entries;
  Polynomial<F> root;
};

template <class F>
struct VerificationResult {
  bool pass;
  Polynomial<F> difference;
};

// An identity (x_1,...,x_n) = lambda * (a_1,...,a_n) over the rational
// function field in x_1..x_n, y_1..y_s, together with the sum-vanishing
// witnesses that justify each propagation step.
template <class F>
struct UniversalRelation {
  std::uint64_t m = 2;
  std::uint64_t n = 1;
  std::uint64_t s = 1;
  std::uint64_t lambda = 1;
  Context<F> ctx;
  std::vector<Polynomial<F>> rhs;
  std::vector<SteinbergWitness<F>> witnesses;
};

// Variable layout of the relation rings: x_1..x_n then y_1..y_s.
template <class F>
Context<F> relation_context(const F& field, std::uint64_t n, std::uint64_t s) {
  std::vector<std::string> names;
  names.reserve(n + s);
  for (std::uint64_t i = 1; i <= n; ++i)
    names.push_back("x" + std::to_string(i));
  for (std::uint64_t j = 1; j <= s; ++j)
    names.push_back("y" + std::to_string(j));
  return Context<F>(field, std::move(names));
}

template <class F>
VerificationResult<F> verify_steinberg_sum(
    const std::vector<Polynomial<F>>& entries, const Polynomial<F>& c,
    std::uint64_t m) {
  if (entries.empty()) throw ZeroEntry("witness needs at least one entry");
  for (const auto& e : entries)
    if (e.is_zero()) throw ZeroEntry("witness entries must be nonzero");
  Polynomial<F> sum = Polynomial<F>::zero(entries.front().context());
  for (const auto& e : entries) sum = sum + e;
  Polynomial<F> diff = sum - c.pow(m);
  return VerificationResult<F>{diff.is_zero(), diff};
}

template <class F>
bool verify_relation_witnesses(const UniversalRelation<F>& rel) {
  for (const auto& w : rel.witnesses)
    if (!verify_steinberg_sum(w.entries, w.root, rel.m).pass) return false;
  return true;
}

// (x_1) = (x_1 * y_1^m): the degree-1 seed of every chain.
template <class F>
UniversalRelation<F> base_relation(const F& field, std::uint64_t m) {
  if (m < 2) throw OutOfRange("modulus must be at least 2");
  UniversalRelation<F> rel{m, 1, 1, 1, relation_context(field, 1, 1), {}, {}};
  auto x1 = Polynomial<F>::variable(rel.ctx, "x1");
  auto y1m = Polynomial<F>::variable(rel.ctx, "y1", static_cast<unsigned>(m));
  rel.rhs.push_back(x1 * y1m);
  return rel;
}

// Degree n -> degree n+1: keep a_1..a_n in their original y-window, append
// x_{n+1} * (y_{s+1}^m - sum a'_i) where a'_i shifts y_j to y_{s+1+j}.
template <class F>
UniversalRelation<F> propagate_relation(const UniversalRelation<F>& rel) {
  const std::uint64_t n2 = rel.n + 1, s2 = 2 * rel.s + 1;
  UniversalRelation<F> out{rel.m,    rel.n, rel.s, rel.lambda,
                           rel.ctx,  {},    {}};
  out.n = n2;
  out.s = s2;
  out.ctx = relation_context(rel.ctx.field(), n2, s2);

  std::map<std::string, Polynomial<F>> shift;
  for (std::uint64_t j = 1; j <= rel.s; ++j)
    shift.emplace("y" + std::to_string(j),
                  Polynomial<F>::variable(out.ctx,
                                          "y" + std::to_string(rel.s + 1 + j)));

  std::vector<Polynomial<F>> shifted;
  Polynomial<F> shifted_sum = Polynomial<F>::zero(out.ctx);
  for (const auto& a : rel.rhs) {
    shifted.push_back(a.substitute(out.ctx, shift));
    shifted_sum = shifted_sum + shifted.back();
  }
  auto y_new = Polynomial<F>::variable(out.ctx, "y" + std::to_string(rel.s + 1),
                                       static_cast<unsigned>(rel.m));
  auto last_factor = y_new - shifted_sum;
  auto x_new = Polynomial<F>::variable(out.ctx, "x" + std::to_string(n2));

  for (const auto& a : rel.rhs) out.rhs.push_back(a.transport(out.ctx));
  out.rhs.push_back(x_new * last_factor);

  for (const auto& w : rel.witnesses) {
    SteinbergWitness<F> moved{{}, w.root.transport(out.ctx)};
    for (const auto& e : w.entries) moved.entries.push_back(e.transport(out.ctx));
    out.witnesses.push_back(std::move(moved));
  }
  SteinbergWitness<F> fresh{shifted,
                            Polynomial<F>::variable(
                                out.ctx, "y" + std::to_string(rel.s + 1))};
  fresh.entries.push_back(last_factor);
  out.witnesses.push_back(std::move(fresh));

  if (!verify_relation_witnesses(out))
    throw WitnessFailure("propagated relation failed witness re-verification");
  return out;
}

// Applies a substitution to both sides and certifies the non-vanishing
// preconditions; equality of the two symbols is supplied by the relation.
template <class F>
std::tuple<Symbol<F>, Symbol<F>, std::uint64_t> instantiate_relation(
    const UniversalRelation<F>& rel, const Context<F>& target,
    const std::map<std::string, Polynomial<F>>& phi) {
  Symbol<F> lhs{rel.m, {}}, rhs{rel.m, {}};
  for (std::uint64_t i = 1; i <= rel.n; ++i) {
    auto img = Polynomial<F>::variable(rel.ctx, "x" + std::to_string(i))
                   .substitute(target, phi);
    if (img.is_zero())
      throw VanishingImage("image of x" + std::to_string(i) + " vanishes");
    lhs.entries.push_back(std::move(img));
  }
  for (std::uint64_t i = 0; i < rel.rhs.size(); ++i) {
    auto img = rel.rhs[i].substitute(target, phi);
    if (img.is_zero())
      throw VanishingImage("image of a" + std::to_string(i + 1) + " vanishes");
    rhs.entries.push_back(std::move(img));
  }
  return {std::move(lhs), std::move(rhs), rel.lambda};
}

// F = c^m - sum phi(a_i): a hypersurface whose function field kills the
// instantiated symbol.  Preconditions checked exactly; irreducibility is
// delegated to the integrality probe and reported as unchecked.
template <class F>
HypersurfaceSpec<F> kill_polynomial(
    const UniversalRelation<F>& rel, const Context<F>& target,
    const std::map<std::string, Polynomial<F>>& phi, const Polynomial<F>& c) {
  for (std::uint64_t i = 1; i <= rel.n; ++i) {
    auto it = phi.find("x" + std::to_string(i));
    if (it == phi.end() || it->second.is_zero())
      throw VanishingImage("x" + std::to_string(i) +
                           " must map to a nonzero constant");
    if (it->second.degree() != 0)
      throw OutOfRange("x" + std::to_string(i) +
                       " must map to a constant (weight-zero) value");
  }
  Polynomial<F> sum = Polynomial<F>::zero(target);
  std::vector<Polynomial<F>> images;
  for (std::uint64_t i = 0; i < rel.rhs.size(); ++i) {
    auto img = rel.rhs[i].substitute(target, phi);
    if (img.is_zero())
      throw VanishingImage("image of a" + std::to_string(i + 1) + " vanishes");
    images.push_back(img);
    sum = sum + img;
  }
  Polynomial<F> eq = c.pow(rel.m) - sum;
  if (eq.is_zero())
    throw ZeroInput("kill polynomial is identically zero");
  for (std::uint64_t i = 0; i < images.size(); ++i)
    if (images[i].try_divide(eq).has_value())
      throw EquationDividesEntry("equation divides the image of a" +
                                 std::to_string(i + 1));
  HypersurfaceSpec<F> spec{target, eq, "", "", {}, {}};
  spec.ambient = "affine space over the target variables";
  spec.source = "kill polynomial c^m - sum(phi(a_i)) from a degree-" +
                std::to_string(rel.n) + " relation";
  spec.params = {{"m", Int(rel.m)}, {"n", Int(rel.n)}, {"s", Int(rel.s)}};
  spec.notes.push_back("irreducibility: unchecked (run the integrality probe)");
  return spec;
}

template <class F>
std::string serialize_relation(const UniversalRelation<F>& rel) {
  std::ostringstream os;
  os << "relation m=" << rel.m << " n=" << rel.n << " s=" << rel.s
     << " lambda=" << rel.lambda << "\n";
  for (const auto& a : rel.rhs) os << a.to_string() << "\n";
  for (const auto& w : rel.witnesses) {
    os << "witness entries=" << w.entries.size()
       << " root=" << w.root.to_string() << "\n";
    for (const auto& e : w.entries) os << e.to_string() << "\n";
  }
  return os.str();
}

namespace detail {

inline std::uint64_t parse_header_field(const std::string& line,
                                        const std::string& key,
                                        std::size_t line_pos) {
  auto at = line.find(key + "=");
  if (at == std::string::npos)
    throw SyntaxError("missing " + key + " in relation header", line_pos);
  std::size_t b = at + key.size() + 1, e = b;
  while (e < line.size() && std::isdigit(static_cast<unsigned char>(line[e])))
    ++e;
  if (e == b) throw SyntaxError("bad " + key + " value", line_pos + b);
  return std::stoull(line.substr(b, e - b));
}

}  // namespace detail

template <class F>
UniversalRelation<F> parse_relation(const std::string& text, const F& field) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line.rfind("relation ", 0) != 0)
    throw SyntaxError("expected a 'relation' header line", 0);
  UniversalRelation<F> rel{detail::parse_header_field(line, "m", 0),
                           detail::parse_header_field(line, "n", 0),
                           detail::parse_header_field(line, "s", 0),
                           detail::parse_header_field(line, "lambda", 0),
                           relation_context(field, 0, 0),
                           {},
                           {}};
  rel.ctx = relation_context(field, rel.n, rel.s);
  for (std::uint64_t i = 0; i < rel.n; ++i) {
    if (!std::getline(is, line))
      throw SyntaxError("missing relation entry line", 0);
    rel.rhs.push_back(parse_polynomial(line, rel.ctx));
    if (rel.rhs.back().is_zero())
      throw ZeroEntry("relation entries must be nonzero");
  }
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line.rfind("witness ", 0) != 0)
      throw SyntaxError("expected a 'witness' line", 0);
    std::uint64_t k = detail::parse_header_field(line, "entries", 0);
    auto rootpos = line.find("root=");
    if (rootpos == std::string::npos)
      throw SyntaxError("missing root in witness line", 0);
    SteinbergWitness<F> w{{},
                          parse_polynomial(line.substr(rootpos + 5), rel.ctx)};
    for (std::uint64_t i = 0; i < k; ++i) {
      if (!std::getline(is, line))
        throw SyntaxError("missing witness entry line", 0);
      w.entries.push_back(parse_polynomial(line, rel.ctx));
    }
    rel.witnesses.push_back(std::move(w));
  }
  return rel;
}

}  // namespace torcert
