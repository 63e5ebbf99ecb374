#pragma once

#include <complex>
#include <vector>

#include "subdivlab/errors.hpp"
#include "subdivlab/rational.hpp"

namespace subdivlab {

namespace scalar {
inline bool is_zero(const GaussRat& x) { return x.is_zero(); }
inline bool is_zero(const std::complex<double>& x) { return x == std::complex<double>(0.0, 0.0); }
inline std::complex<double> to_complex(const GaussRat& x) { return x.to_complex(); }
inline std::complex<double> to_complex(const std::complex<double>& x) { return x; }
}  // namespace scalar

// Dense row-major matrix over an exact or float scalar.  Small by design:
// masks are r x r with r rarely above 3, transition matrices a few dozen rows.
template <class T>
struct Mat {
  int rows = 0, cols = 0;
  std::vector<T> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, T()) {}

  static Mat zero(int r, int c) { return Mat(r, c); }
  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = T(1);
    return m;
  }

  T& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const T& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  bool is_zero() const {
    for (const T& x : a)
      if (!scalar::is_zero(x)) return false;
    return true;
  }

  Mat transpose() const {
    Mat m(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m.at(j, i) = at(i, j);
    return m;
  }

  Mat& operator+=(const Mat& o) {
    if (rows != o.rows || cols != o.cols)
      throw DimensionMismatch("matrix addition shape mismatch");
    for (size_t k = 0; k < a.size(); ++k) a[k] += o.a[k];
    return *this;
  }
  Mat& operator-=(const Mat& o) {
    if (rows != o.rows || cols != o.cols)
      throw DimensionMismatch("matrix subtraction shape mismatch");
    for (size_t k = 0; k < a.size(); ++k) a[k] -= o.a[k];
    return *this;
  }
  friend Mat operator+(Mat x, const Mat& y) { return x += y; }
  friend Mat operator-(Mat x, const Mat& y) { return x -= y; }

  friend Mat operator*(const Mat& x, const Mat& y) {
    if (x.cols != y.rows) throw DimensionMismatch("matrix product shape mismatch");
    Mat m(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
      for (int k = 0; k < x.cols; ++k) {
        const T& xik = x.at(i, k);
        if (scalar::is_zero(xik)) continue;
        for (int j = 0; j < y.cols; ++j) m.at(i, j) += xik * y.at(k, j);
      }
    return m;
  }

  Mat scaled(const T& c) const {
    Mat m = *this;
    for (T& x : m.a) x *= c;
    return m;
  }

  friend bool operator==(const Mat& x, const Mat& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }
};

using QMat = Mat<GaussRat>;
using CMat = Mat<std::complex<double>>;

inline CMat to_float(const QMat& m) {
  CMat f(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) f.at(i, j) = m.at(i, j).to_complex();
  return f;
}

}  // namespace subdivlab
