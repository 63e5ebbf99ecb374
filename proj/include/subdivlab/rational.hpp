#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>

#include "subdivlab/errors.hpp"

namespace subdivlab {

using Rat = mpq_class;

// Gaussian rational: re + im*i with both parts exact rationals.  All field
// operations stay exact; conversion to double is explicit and one-way.
struct GaussRat {
  Rat re, im;

  GaussRat() : re(0), im(0) {}
  GaussRat(long n) : re(n), im(0) {}  // NOLINT: implicit by design
  GaussRat(const Rat& r) : re(r), im(0) {}
  GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  static GaussRat i() { return GaussRat(Rat(0), Rat(1)); }
  // i^j for any integer j (j mod 4 decides).
  static GaussRat i_pow(long j);

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  GaussRat conj() const { return GaussRat(re, -im); }
  Rat abs2() const { return re * re + im * im; }

  GaussRat operator-() const { return GaussRat(-re, -im); }
  GaussRat& operator+=(const GaussRat& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussRat& operator-=(const GaussRat& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussRat& operator*=(const GaussRat& o) {
    Rat r = re * o.re - im * o.im;
    Rat i = re * o.im + im * o.re;
    re = r;
    im = i;
    return *this;
  }
  GaussRat& operator/=(const GaussRat& o);

  friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
  friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
  friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
  friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }
  friend bool operator==(const GaussRat& a, const GaussRat& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

  // Nonnegative integer exponent.
  GaussRat pow(long n) const;

  std::complex<double> to_complex() const {
    return {re.get_d(), im.get_d()};
  }

  // Canonical text form: "p/q" when real (denominator omitted when 1),
  // otherwise "re+im i" / "re-im i" with the same rational rendering.
  std::string str() const;

  // Strict inverse of str(); also accepts plain "p/q" and "i" literals.
  static GaussRat parse(const std::string& text);
};

// Render a rational as "p" or "p/q".
std::string rat_str(const Rat& r);
// Parse "p", "p/q" or "-p/q"; throws ParseError on anything else.
Rat rat_parse(const std::string& text);

}  // namespace subdivlab
