#pragma once

#include <cctype>
#include <cstdint>
#include <string>

#include "errors.hpp"
#include "polynomial.hpp"

namespace torcert {

// Recursive-descent parser for the polynomial grammar.  Accepts a superset of
// the printer's output: parentheses, implicit multiplication before an
// identifier or '(', unary sign, and rational coefficients num/den.
template <class F>
class PolyParser {
 public:
  PolyParser(const std::string& text, const Context<F>& ctx)
      : s_(text), ctx_(ctx) {}

  Polynomial<F> run() {
    skip_ws();
    Polynomial<F> p = parse_expr();
    skip_ws();
    if (pos_ != s_.size()) throw SyntaxError("unexpected trailing input", pos_);
    return p;
  }

 private:
  using Poly = Polynomial<F>;

  void skip_ws() {
    while (pos_ < s_.size() &&
           std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  bool eat(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly parse_expr() {
    skip_ws();
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    Poly acc = parse_term();
    if (neg) acc = -acc;
    for (;;) {
      skip_ws();
      if (eat('+')) {
        acc = acc + parse_term();
      } else if (eat('-')) {
        acc = acc - parse_term();
      } else {
        return acc;
      }
    }
  }

  Poly parse_term() {
    Poly acc = parse_factor();
    for (;;) {
      skip_ws();
      char c = peek();
      if (eat('*')) {
        acc = acc * parse_factor();
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' ||
                 c == '(') {
        acc = acc * parse_factor();
      } else {
        return acc;
      }
    }
  }

  Poly parse_factor() {
    Poly base = parse_atom();
    skip_ws();
    if (eat('^')) {
      std::uint64_t e = parse_uint();
      return base.pow(e);
    }
    return base;
  }

  Poly parse_atom() {
    skip_ws();
    std::size_t at = pos_;
    char c = peek();
    if (c == '(') {
      ++pos_;
      Poly inner = parse_expr();
      skip_ws();
      if (!eat(')')) throw SyntaxError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Int num = parse_int();
      skip_ws();
      if (eat('/')) {
        Int den = parse_int();
        if (den == 0) throw SyntaxError("zero denominator", at);
        return Poly::constant(ctx_, ctx_.field().from_parts(num, den));
      }
      return Poly::constant(ctx_, ctx_.field().from_int(num));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name = parse_ident();
      auto idx = ctx_.find(name);
      if (!idx) throw UnknownVariable(name);
      return Poly::variable(ctx_, *idx);
    }
    throw SyntaxError(pos_ >= s_.size() ? "unexpected end of input"
                                        : "unexpected character",
                      pos_);
  }

  std::string parse_ident() {
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
            s_[pos_] == '_'))
      ++pos_;
    return s_.substr(start, pos_ - start);
  }

  Int parse_int() {
    skip_ws();
    if (!std::isdigit(static_cast<unsigned char>(peek())))
      throw SyntaxError("expected a number", pos_);
    Int v = 0;
    while (pos_ < s_.size() &&
           std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_] - '0');
      ++pos_;
    }
    return v;
  }

  std::uint64_t parse_uint() {
    std::size_t at = pos_;
    Int v = parse_int();
    if (v > 1000000000) throw SyntaxError("exponent too large", at);
    return v.convert_to<std::uint64_t>();
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  const Context<F>& ctx_;
};

template <class F>
Polynomial<F> parse_polynomial(const std::string& text,
                               const Context<F>& ctx) {
  return PolyParser<F>(text, ctx).run();
}

}  // namespace torcert
