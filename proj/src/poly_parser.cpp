// Recursive-descent parser for the polynomial grammar:
//
//   expr    := term (('+' | '-') term)*
//   term    := unary ('*' unary)*
//   unary   := '-' unary | '+' unary | power
//   power   := primary ('^' integer)?
//   primary := integer ('/' integer)? | 'x' integer '_' integer | '(' expr ')'

#include <cctype>

#include "rigidcheck/error.hpp"
#include "rigidcheck/polymap.hpp"

namespace rigidcheck {

namespace {

constexpr unsigned kMaxExponent = 255;

class Parser {
 public:
  Parser(const std::string& text, int k, int d)
      : text_(text), k_(k), d_(d), nvars_(static_cast<std::size_t>(k * d)) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw InputError("syntax error: " + message, static_cast<long>(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool at_digit() const { return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])); }

  Integer integer_literal() {
    skip_space();
    if (!at_digit()) fail("expected integer literal");
    const std::size_t start = pos_;
    while (at_digit()) ++pos_;
    return Integer(text_.substr(start, pos_ - start));
  }

  Polynomial expr() {
    Polynomial acc = term();
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = unary();
    while (accept('*')) acc = acc * unary();
    return acc;
  }

  Polynomial unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = primary();
    if (!accept('^')) return base;
    skip_space();
    if (!at_digit()) fail("exponent must be a nonnegative integer literal");
    const std::size_t start = pos_;
    const Integer e = integer_literal();
    skip_space();
    if (pos_ < text_.size() && (text_[pos_] == '/' || text_[pos_] == '.')) {
      pos_ = start;
      fail("non-integer exponent");
    }
    if (e > kMaxExponent) {
      pos_ = start;
      fail("exponent too large");
    }
    return base.pow(e.convert_to<unsigned>());
  }

  Polynomial primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const Integer num = integer_literal();
      if (accept('/')) {
        const std::size_t den_pos = pos_;
        const Integer den = integer_literal();
        if (den == 0) {
          pos_ = den_pos;
          fail("zero denominator");
        }
        return Polynomial::constant(nvars_, Rational(num, den));
      }
      return Polynomial::constant(nvars_, Rational(num));
    }
    if (c == 'x') {
      const std::size_t start = pos_;
      ++pos_;
      if (!at_digit()) fail("expected argument index after 'x'");
      const Integer arg = integer_literal();
      if (pos_ >= text_.size() || text_[pos_] != '_') fail("expected '_' in variable name");
      ++pos_;
      if (!at_digit()) fail("expected coordinate index");
      const Integer coord = integer_literal();
      if (arg < 1 || arg > k_ || coord < 1 || coord > d_) {
        pos_ = start;
        throw InputError("variable index out of range: x" + arg.str() + "_" + coord.str() + " with k=" +
                             std::to_string(k_) + ", d=" + std::to_string(d_),
                         static_cast<long>(start));
      }
      const auto index = static_cast<std::size_t>((arg.convert_to<int>() - 1) * d_ + coord.convert_to<int>() - 1);
      return Polynomial::variable(nvars_, index);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& text_;
  int k_;
  int d_;
  std::size_t nvars_;
  std::size_t pos_ = 0;
};

}  // namespace

PolyMap parse_poly(const std::string& text, int k, int d) {
  if (k < 1 || d < 1) throw InputError("parse_poly requires k >= 1 and d >= 1");
  Polynomial p = Parser(text, k, d).parse();
  return PolyMap(k, d, std::move(p), "poly:" + text);
}

}  // namespace rigidcheck
