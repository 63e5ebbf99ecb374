#include "subdivlab/expr.hpp"

#include <cctype>

namespace subdivlab {

namespace {

struct Parser {
  const std::string& s;
  const ParamMap& params;
  size_t pos = 0;

  Parser(const std::string& text, const ParamMap& p) : s(text), params(p) {}

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  [[noreturn]] void fail(const std::string& why) {
    throw ParseError("expression '" + s + "': " + why + " at position " +
                     std::to_string(pos));
  }

  GaussRat parse_expr() {
    GaussRat v = parse_term();
    while (true) {
      if (eat('+'))
        v += parse_term();
      else if (eat('-'))
        v -= parse_term();
      else
        return v;
    }
  }

  GaussRat parse_term() {
    GaussRat v = parse_factor();
    while (true) {
      if (eat('*'))
        v *= parse_factor();
      else if (eat('/'))
        v /= parse_factor();
      else
        return v;
    }
  }

  GaussRat parse_factor() {
    if (eat('-')) return -parse_factor();
    if (eat('+')) return parse_factor();
    return parse_power();
  }

  GaussRat parse_power() {
    GaussRat base = parse_atom();
    if (!eat('^')) return base;
    skip_ws();
    bool neg = eat('-');
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) fail("expected integer exponent");
    long e = std::stol(s.substr(start, pos - start));
    GaussRat p = base.pow(e);
    return neg ? GaussRat(1) / p : p;
  }

  GaussRat parse_atom() {
    skip_ws();
    if (pos >= s.size()) fail("unexpected end of input");
    char c = s[pos];
    if (c == '(') {
      ++pos;
      GaussRat v = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      mpz_class n(s.substr(start, pos - start));
      Rat r(n, 1);
      return GaussRat(r);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos;
      while (pos < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
        ++pos;
      std::string name = s.substr(start, pos - start);
      if (name == "i") return GaussRat::i();
      auto it = params.find(name);
      if (it == params.end()) fail("unknown name '" + name + "'");
      return it->second;
    }
    fail("unexpected character");
  }
};

}  // namespace

GaussRat eval_expr(const std::string& text, const ParamMap& params) {
  Parser p(text, params);
  GaussRat v = p.parse_expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return v;
}

}  // namespace subdivlab
