#pragma once

#include <algorithm>
#include <complex>
#include <vector>

#include "subdivlab/smallmat.hpp"

namespace subdivlab {

// Finitely supported matrix-valued sequence.  Coefficient c[k] sits at index
// lo+k; the empty vector is the zero sequence.  Mixed exact/float arithmetic
// is rejected at compile time: operations require one scalar instantiation.
template <class T>
struct BasicSeq {
  int rows = 0, cols = 0;
  int lo = 0;
  std::vector<Mat<T>> c;

  BasicSeq() = default;
  BasicSeq(int r, int cl) : rows(r), cols(cl) {}
  // Zero sequence on [l, h].
  BasicSeq(int r, int cl, int l, int h) : rows(r), cols(cl), lo(l) {
    if (h < l) throw DimensionMismatch("sequence window is empty");
    c.assign(static_cast<size_t>(h - l) + 1, Mat<T>(r, cl));
  }

  bool empty() const { return c.empty(); }
  int hi() const { return lo + static_cast<int>(c.size()) - 1; }
  bool in_support(int k) const { return !c.empty() && k >= lo && k <= hi(); }

  Mat<T> get(int k) const {
    if (!in_support(k)) return Mat<T>(rows, cols);
    return c[static_cast<size_t>(k - lo)];
  }
  Mat<T>& ref(int k) { return c[static_cast<size_t>(k - lo)]; }
  const Mat<T>& ref(int k) const { return c[static_cast<size_t>(k - lo)]; }

  // Drop zero coefficients at both ends; the zero sequence ends up empty.
  void trim() {
    size_t b = 0, e = c.size();
    while (b < e && c[b].is_zero()) ++b;
    while (e > b && c[e - 1].is_zero()) --e;
    if (b == 0 && e == c.size()) return;
    std::vector<Mat<T>> kept(c.begin() + static_cast<long>(b), c.begin() + static_cast<long>(e));
    lo += static_cast<int>(b);
    c = std::move(kept);
    if (c.empty()) lo = 0;
  }

  friend bool operator==(const BasicSeq& u, const BasicSeq& v) {
    BasicSeq a = u, b = v;
    a.trim();
    b.trim();
    if (a.rows != b.rows || a.cols != b.cols) return false;
    return a.lo == b.lo && a.c == b.c;
  }
};

using Seq = BasicSeq<GaussRat>;
using FSeq = BasicSeq<std::complex<double>>;

template <class T>
BasicSeq<T> seq_from(int lo, std::vector<Mat<T>> coeffs) {
  if (coeffs.empty()) throw DimensionMismatch("seq_from needs at least one coefficient");
  BasicSeq<T> s(coeffs[0].rows, coeffs[0].cols);
  s.lo = lo;
  s.c = std::move(coeffs);
  s.trim();
  return s;
}

// delta * identity: the canonical subdivision seed.
inline Seq delta_id(int r) {
  Seq s(r, r);
  s.lo = 0;
  s.c.push_back(QMat::identity(r));
  return s;
}

template <class T>
BasicSeq<T> seq_add(const BasicSeq<T>& u, const BasicSeq<T>& v) {
  if (u.empty()) return v;
  if (v.empty()) return u;
  if (u.rows != v.rows || u.cols != v.cols)
    throw DimensionMismatch("sequence addition shape mismatch");
  int lo = std::min(u.lo, v.lo), hi = std::max(u.hi(), v.hi());
  BasicSeq<T> out(u.rows, u.cols, lo, hi);
  for (int k = lo; k <= hi; ++k) out.ref(k) = u.get(k) + v.get(k);
  out.trim();
  return out;
}

template <class T>
BasicSeq<T> seq_scale(BasicSeq<T> u, const T& c) {
  for (auto& m : u.c) m = m.scaled(c);
  u.trim();
  return u;
}

template <class T>
BasicSeq<T> seq_sub(const BasicSeq<T>& u, const BasicSeq<T>& v) {
  return seq_add(u, seq_scale(v, T(-1)));
}

// Convolution [u*v](j) = sum_k u(j-k) v(k); symbols multiply in this order.
template <class T>
BasicSeq<T> seq_conv(const BasicSeq<T>& u, const BasicSeq<T>& v) {
  if (u.cols != v.rows) throw DimensionMismatch("convolution shape mismatch");
  if (u.empty() || v.empty()) return BasicSeq<T>(u.rows, v.cols);
  BasicSeq<T> out(u.rows, v.cols, u.lo + v.lo, u.hi() + v.hi());
  for (int ku = u.lo; ku <= u.hi(); ++ku) {
    const Mat<T>& mu = u.ref(ku);
    if (mu.is_zero()) continue;
    for (int kv = v.lo; kv <= v.hi(); ++kv) {
      const Mat<T>& mv = v.ref(kv);
      if (mv.is_zero()) continue;
      out.ref(ku + kv) += mu * mv;
    }
  }
  out.trim();
  return out;
}

template <class T>
BasicSeq<T> seq_shift(BasicSeq<T> u, int s) {
  if (!u.empty()) u.lo += s;
  return u;
}

// Up-sampling by t: nonzero values moved from k to t*k.
template <class T>
BasicSeq<T> upsample(const BasicSeq<T>& u, int t) {
  if (t <= 0) throw DimensionMismatch("upsample factor must be positive");
  if (u.empty() || t == 1) return u;
  BasicSeq<T> out(u.rows, u.cols, u.lo * t, u.hi() * t);
  for (int k = u.lo; k <= u.hi(); ++k) out.ref(t * k) = u.ref(k);
  out.trim();
  return out;
}

inline int floor_div(int a, int b) {
  int q = a / b, r = a % b;
  return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}
inline int ceil_div(int a, int b) { return -floor_div(-a, b); }

// Even/odd part: coset(u, g)(k) = u(g + 2k).
template <class T>
BasicSeq<T> coset(const BasicSeq<T>& u, int g) {
  if (g != 0 && g != 1) throw DimensionMismatch("coset index must be 0 or 1");
  if (u.empty()) return u;
  int first = ceil_div(u.lo - g, 2);
  int last = floor_div(u.hi() - g, 2);
  if (last < first) return BasicSeq<T>(u.rows, u.cols);
  BasicSeq<T> out(u.rows, u.cols, first, last);
  for (int k = first; k <= last; ++k) out.ref(k) = u.get(g + 2 * k);
  out.trim();
  return out;
}

// Backward difference iterated `order` times: (Du)(k) = u(k) - u(k-1).
template <class T>
BasicSeq<T> difference(BasicSeq<T> u, int order = 1) {
  for (int t = 0; t < order; ++t) u = seq_sub(u, seq_shift(u, 1));
  return u;
}

// Column l of a matrix sequence as an r x 1 sequence.
template <class T>
BasicSeq<T> seq_column(const BasicSeq<T>& u, int l) {
  if (l < 0 || l >= u.cols) throw DimensionMismatch("column index out of range");
  BasicSeq<T> out(u.rows, 1);
  if (u.empty()) return out;
  out = BasicSeq<T>(u.rows, 1, u.lo, u.hi());
  for (int k = u.lo; k <= u.hi(); ++k)
    for (int i = 0; i < u.rows; ++i) out.ref(k).at(i, 0) = u.ref(k).at(i, l);
  out.trim();
  return out;
}

// Symbol u^(xi) = sum_k u(k) e^{-ik xi}, evaluated in floats.
template <class T>
CMat symbol_eval(const BasicSeq<T>& u, double xi) {
  CMat out(u.rows, u.cols);
  for (int k = u.lo; k <= u.hi(); ++k) {
    std::complex<double> w = std::exp(std::complex<double>(0.0, -k * xi));
    for (int i = 0; i < u.rows; ++i)
      for (int j = 0; j < u.cols; ++j) out.at(i, j) += w * scalar::to_complex(u.ref(k).at(i, j));
  }
  return out;
}

inline FSeq to_float(const Seq& u) {
  FSeq f(u.rows, u.cols);
  f.lo = u.lo;
  for (const QMat& m : u.c) f.c.push_back(to_float(m));
  return f;
}

// Largest |entry|^2 over the support, exact.
inline Rat max_abs2(const Seq& u) {
  Rat best(0);
  for (const QMat& m : u.c)
    for (const GaussRat& x : m.a) {
      Rat v = x.abs2();
      if (v > best) best = v;
    }
  return best;
}

}  // namespace subdivlab
