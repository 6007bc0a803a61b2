#include "conicmin/poly_io.hpp"

#include <cctype>

namespace conicmin {

namespace {

struct Parser {
  const std::string& s;
  size_t pos = 0;
  const VarList& vars;

  void skip_ws() {
    while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw ParseError("parse error at offset " + std::to_string(pos) + ": " + what);
  }

  MultiPoly expr() {
    MultiPoly r = accept('-') ? -term() : term();
    while (true) {
      if (accept('+'))
        r += term();
      else if (accept('-'))
        r -= term();
      else
        return r;
    }
  }

  MultiPoly term() {
    MultiPoly r = factor();
    while (true) {
      char c = peek();
      if (c == '*') {
        ++pos;
        r = r * factor();
      } else if (c == '(' || std::isalpha((unsigned char)c) || std::isdigit((unsigned char)c)) {
        // implicit product, e.g. `2g` or `(g+1)(g-1)`
        r = r * factor();
      } else {
        return r;
      }
    }
  }

  MultiPoly factor() {
    MultiPoly base = atom();
    if (accept('^')) {
      long e = integer_literal();
      if (e < 0) fail("negative exponent");
      MultiPoly r = MultiPoly::constant(vars, 1);
      MultiPoly b = base;
      unsigned long n = (unsigned long)e;
      while (n > 0) {
        if (n & 1) r = r * b;
        n >>= 1;
        if (n) b = b * b;
      }
      return r;
    }
    return base;
  }

  MultiPoly atom() {
    char c = peek();
    if (c == '(') {
      ++pos;
      MultiPoly r = expr();
      if (!accept(')')) fail("expected ')'");
      return r;
    }
    if (c == '-') {
      ++pos;
      return -atom();
    }
    if (std::isdigit((unsigned char)c)) {
      size_t start = pos;
      while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
      return MultiPoly::constant(vars, Int(s.substr(start, pos - start)));
    }
    if (std::isalpha((unsigned char)c) || c == '_') {
      size_t start = pos;
      while (pos < s.size() &&
             (std::isalnum((unsigned char)s[pos]) || s[pos] == '_'))
        ++pos;
      std::string name = s.substr(start, pos - start);
      for (const auto& v : vars)
        if (v == name) return MultiPoly::variable(vars, name);
      fail("unknown variable '" + name + "'");
    }
    fail("unexpected character");
  }

  long integer_literal() {
    bool neg = accept('-');
    char c = peek();
    if (!std::isdigit((unsigned char)c)) fail("expected integer");
    long v = 0;
    while (pos < s.size() && std::isdigit((unsigned char)s[pos])) {
      v = v * 10 + (s[pos] - '0');
      if (v > 1000000) fail("exponent too large");
      ++pos;
    }
    return neg ? -v : v;
  }
};

}  // namespace

MultiPoly parse_poly(const std::string& text, const VarList& vars) {
  Parser p{text, 0, vars};
  MultiPoly r = p.expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return r;
}

}  // namespace conicmin
