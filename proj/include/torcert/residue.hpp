#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "polynomial.hpp"

namespace torcert {

// A degree-n symbol mod m whose entries are monomials in the named
// variables: row j holds the exponent vector (mod m) of entry j.
// coeff = 0 together with an empty matrix is the zero symbol.
struct MonomialSymbol {
  std::uint64_t m = 2;
  std::uint64_t coeff = 0;
  std::vector<std::string> vars;
  std::vector<std::vector<std::uint64_t>> rows;
};

inline void validate_symbol(const MonomialSymbol& s) {
  if (s.m < 2) throw OutOfRange("modulus must be at least 2");
  std::set<std::string> seen;
  for (const auto& v : s.vars) {
    if (!valid_variable_name(v)) throw SyntaxError("bad variable name", 0);
    if (!seen.insert(v).second) throw DuplicateVariable(v);
  }
  for (const auto& r : s.rows)
    if (r.size() != s.vars.size())
      throw OutOfRange("row width must match the variable count");
}

namespace detail {

// Reduces a matrix mod m; false when the symbol it labels dies (a unit
// entry, i.e. an all-zero row, or a repeated row).
inline bool normal_matrix(std::vector<std::vector<std::uint64_t>>& rows,
                          std::uint64_t m) {
  for (auto& r : rows) {
    bool zero = true;
    for (auto& a : r) {
      a %= m;
      if (a != 0) zero = false;
    }
    if (zero) return false;
  }
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = i + 1; j < rows.size(); ++j)
      if (rows[i] == rows[j]) return false;
  return true;
}

// A formal Z/m-combination of symbols sharing one variable list.
struct SymbolSum {
  std::uint64_t m = 2;
  std::vector<std::string> vars;
  std::map<std::vector<std::vector<std::uint64_t>>, std::uint64_t> terms;
};

inline void add_term(SymbolSum& sum,
                     std::vector<std::vector<std::uint64_t>> rows,
                     std::uint64_t c) {
  c %= sum.m;
  if (c == 0 || !normal_matrix(rows, sum.m)) return;
  auto [it, fresh] = sum.terms.emplace(std::move(rows), c);
  if (!fresh) {
    it->second = (it->second + c) % sum.m;
    if (it->second == 0) sum.terms.erase(it);
  }
}

// One residue step: sum over rows j carrying the variable of
// (-1)^(j-1) * a_j * (matrix with row j and the variable's column removed).
inline SymbolSum residue_step(const SymbolSum& sum, const std::string& var) {
  SymbolSum out{sum.m, sum.vars, {}};
  auto pos = std::find(out.vars.begin(), out.vars.end(), var);
  if (pos == out.vars.end()) return SymbolSum{sum.m, sum.vars, {}};
  const std::size_t k = static_cast<std::size_t>(pos - out.vars.begin());
  out.vars.erase(pos);

  for (const auto& [rows, c] : sum.terms) {
    for (std::size_t j = 0; j < rows.size(); ++j) {
      const std::uint64_t a = rows[j][k];
      if (a == 0) continue;
      std::vector<std::vector<std::uint64_t>> rest;
      rest.reserve(rows.size() - 1);
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i == j) continue;
        auto row = rows[i];
        row.erase(row.begin() + static_cast<std::ptrdiff_t>(k));
        rest.push_back(std::move(row));
      }
      std::uint64_t scaled = (c * a) % sum.m;
      if (j % 2 == 1) scaled = (sum.m - scaled) % sum.m;
      add_term(out, std::move(rest), scaled);
    }
  }
  return out;
}

inline SymbolSum to_sum(const MonomialSymbol& s) {
  SymbolSum sum{s.m, s.vars, {}};
  add_term(sum, s.rows, s.coeff);
  return sum;
}

}  // namespace detail

// Canonical form: exponents and coefficient reduced mod m; any symbol with
// a unit entry or a repeated row collapses to the zero symbol.
inline MonomialSymbol normalize(const MonomialSymbol& s) {
  validate_symbol(s);
  MonomialSymbol out{s.m, s.coeff % s.m, s.vars, s.rows};
  if (out.coeff == 0 || !detail::normal_matrix(out.rows, out.m)) {
    out.coeff = 0;
    out.rows.clear();
  }
  return out;
}

inline bool is_zero_symbol(const MonomialSymbol& s) {
  return normalize(s).coeff == 0;
}

inline MonomialSymbol scale_symbol(const MonomialSymbol& s, std::uint64_t e) {
  MonomialSymbol out = s;
  out.coeff = (out.coeff % out.m) * (e % out.m) % out.m;
  return out;
}

// (x_1,...,x_n): identity exponent matrix, coefficient 1.
inline MonomialSymbol generator(std::uint64_t m, std::uint64_t n) {
  if (m < 2 || n < 1) throw OutOfRange("need m >= 2 and n >= 1");
  MonomialSymbol s{m, 1, {}, {}};
  for (std::uint64_t i = 1; i <= n; ++i)
    s.vars.push_back("x" + std::to_string(i));
  s.rows.assign(n, std::vector<std::uint64_t>(n, 0));
  for (std::uint64_t i = 0; i < n; ++i) s.rows[i][i] = 1;
  return s;
}

// Single residue step that must land on one monomial symbol again; a
// genuinely mixed result raises SumNotMonomial.
inline MonomialSymbol tame_residue(const MonomialSymbol& s,
                                   const std::string& var) {
  auto sum = detail::to_sum(normalize(s));
  auto out = detail::residue_step(sum, var);
  if (out.terms.empty()) return MonomialSymbol{s.m, 0, out.vars, {}};
  if (out.terms.size() > 1)
    throw SumNotMonomial("residue along " + var +
                         " is a sum of distinct symbols");
  const auto& [rows, c] = *out.terms.begin();
  return MonomialSymbol{s.m, c, out.vars, rows};
}

// Folds residue steps over the order, which must cover every variable the
// symbol actually uses; returns the coefficient of the degree-0 result.
inline std::uint64_t iterated_residue(const MonomialSymbol& s,
                                      const std::vector<std::string>& order) {
  MonomialSymbol norm = normalize(s);
  std::set<std::string> listed(order.begin(), order.end());
  for (std::size_t k = 0; k < norm.vars.size(); ++k)
    for (const auto& r : norm.rows)
      if (r[k] != 0 && !listed.count(norm.vars[k]))
        throw OrderIncomplete("order misses variable " + norm.vars[k]);

  auto sum = detail::to_sum(norm);
  for (const auto& v : order) sum = detail::residue_step(sum, v);
  if (sum.terms.empty()) return 0;
  for (const auto& [rows, c] : sum.terms)
    if (!rows.empty())
      throw OrderIncomplete("order does not reach degree zero");
  return sum.terms.begin()->second;
}

// Least e >= 1 killing every tested iterated residue of e*s; the support
// is processed in declared order and in reverse.  e = m always works.
inline std::uint64_t certify_order(const MonomialSymbol& s) {
  MonomialSymbol norm = normalize(s);
  if (norm.coeff == 0) return 1;
  std::vector<std::string> support;
  for (std::size_t k = 0; k < norm.vars.size(); ++k)
    for (const auto& r : norm.rows)
      if (r[k] != 0) {
        support.push_back(norm.vars[k]);
        break;
      }
  std::vector<std::vector<std::string>> orders{support, support};
  std::reverse(orders[1].begin(), orders[1].end());

  for (std::uint64_t e = 1; e <= norm.m; ++e) {
    bool all_zero = true;
    for (const auto& ord : orders)
      if (iterated_residue(scale_symbol(norm, e), ord) != 0) all_zero = false;
    if (all_zero) return e;
  }
  return norm.m;  // unreachable: e = m zeroes the coefficient
}

inline std::string serialize_symbol(const MonomialSymbol& s) {
  validate_symbol(s);
  std::ostringstream os;
  os << "symbol m=" << s.m << " coeff=" << s.coeff << " vars=";
  for (std::size_t i = 0; i < s.vars.size(); ++i)
    os << (i ? "," : "") << s.vars[i];
  os << "\n";
  for (const auto& r : s.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? " " : "") << r[i];
    os << "\n";
  }
  return os.str();
}

inline MonomialSymbol parse_symbol(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line.rfind("symbol ", 0) != 0)
    throw SyntaxError("expected a 'symbol' header line", 0);
  MonomialSymbol s;
  std::istringstream hs(line.substr(7));
  std::string field;
  bool saw_m = false, saw_coeff = false, saw_vars = false;
  while (hs >> field) {
    auto eq = field.find('=');
    if (eq == std::string::npos)
      throw SyntaxError("expected key=value in symbol header", 0);
    std::string key = field.substr(0, eq), val = field.substr(eq + 1);
    try {
      if (key == "m") {
        s.m = std::stoull(val);
        saw_m = true;
      } else if (key == "coeff") {
        s.coeff = std::stoull(val);
        saw_coeff = true;
      } else if (key == "vars") {
        std::istringstream vs(val);
        std::string name;
        while (std::getline(vs, name, ',')) s.vars.push_back(name);
        saw_vars = true;
      } else {
        throw SyntaxError("unknown symbol header key: " + key, 0);
      }
    } catch (const std::invalid_argument&) {
      throw SyntaxError("bad numeric value in symbol header", 0);
    }
  }
  if (!saw_m || !saw_coeff || !saw_vars)
    throw SyntaxError("symbol header needs m, coeff and vars", 0);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream rs(line);
    std::vector<std::uint64_t> row;
    std::uint64_t a;
    while (rs >> a) row.push_back(a);
    if (!rs.eof()) throw SyntaxError("bad exponent row", 0);
    s.rows.push_back(std::move(row));
  }
  validate_symbol(s);
  return s;
}

}  // namespace torcert
