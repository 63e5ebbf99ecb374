#include "subdivlab/rational.hpp"

#include <cctype>

namespace subdivlab {

GaussRat GaussRat::i_pow(long j) {
  long m = ((j % 4) + 4) % 4;
  switch (m) {
    case 0:
      return GaussRat(1);
    case 1:
      return GaussRat(Rat(0), Rat(1));
    case 2:
      return GaussRat(-1);
    default:
      return GaussRat(Rat(0), Rat(-1));
  }
}

GaussRat& GaussRat::operator/=(const GaussRat& o) {
  if (o.is_zero()) throw SingularSystem("division by zero");
  Rat d = o.abs2();
  Rat r = (re * o.re + im * o.im) / d;
  Rat i = (im * o.re - re * o.im) / d;
  re = r;
  im = i;
  return *this;
}

GaussRat GaussRat::pow(long n) const {
  if (n < 0) throw UnsupportedOperation("negative exponent on GaussRat::pow");
  GaussRat acc(1);
  GaussRat base = *this;
  while (n > 0) {
    if (n & 1) acc *= base;
    base *= base;
    n >>= 1;
  }
  return acc;
}

std::string rat_str(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rat rat_parse(const std::string& text) {
  size_t i = 0;
  auto fail = [&]() -> Rat {
    throw ParseError("invalid rational literal: '" + text + "'");
  };
  bool neg = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    neg = text[i] == '-';
    ++i;
  }
  size_t start = i;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
  if (i == start) return fail();
  mpz_class num(text.substr(start, i - start));
  mpz_class den(1);
  if (i < text.size() && text[i] == '/') {
    ++i;
    size_t dstart = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == dstart) return fail();
    den = mpz_class(text.substr(dstart, i - dstart));
    if (den == 0) return fail();
  }
  if (i != text.size()) return fail();
  Rat out(num, den);
  out.canonicalize();
  return neg ? Rat(-out) : out;
}

std::string GaussRat::str() const {
  if (im == 0) return rat_str(re);
  std::string out = rat_str(re);
  if (im > 0)
    out += "+" + rat_str(im) + " i";
  else
    out += "-" + rat_str(Rat(-im)) + " i";
  return out;
}

GaussRat GaussRat::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw ParseError("empty scalar literal");
  if (s == "i") return GaussRat::i();
  if (s == "-i") return -GaussRat::i();
  bool imag = false;
  if (s.back() == 'i') {
    imag = true;
    s.pop_back();
    if (s.empty()) throw ParseError("invalid scalar literal: '" + text + "'");
  }
  if (!imag) return GaussRat(rat_parse(s));
  // Split "re(+|-)im" at the sign separating the two parts (not a leading
  // sign and not one right after '/').
  for (size_t i = 1; i < s.size(); ++i) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != '/') {
      Rat re = rat_parse(s.substr(0, i));
      std::string imtxt = s.substr(i);
      if (imtxt == "+" || imtxt == "-") imtxt += "1";
      Rat im = rat_parse(imtxt);
      return GaussRat(re, im);
    }
  }
  // Pure imaginary "q i".
  return GaussRat(Rat(0), rat_parse(s));
}

}  // namespace subdivlab
