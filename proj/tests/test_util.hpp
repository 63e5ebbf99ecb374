#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include "subdivlab/corpus.hpp"
#include "subdivlab/io.hpp"

namespace testutil {

using namespace subdivlab;

inline GaussRat Q(const std::string& s) { return eval_expr(s); }

inline Rat rat(long n, long d) {
  Rat r(n, d);
  r.canonicalize();
  return r;
}

// 1 x 1 sequence from expression strings.
inline Seq sseq(int lo, const std::vector<std::string>& vals) {
  std::vector<QMat> mats;
  for (const std::string& v : vals) {
    QMat m(1, 1);
    m.at(0, 0) = Q(v);
    mats.push_back(m);
  }
  return seq_from(lo, std::move(mats));
}

// r x 1 sequence, one block of expressions per index.
inline Seq vseq(int lo, const std::vector<std::vector<std::string>>& vals) {
  std::vector<QMat> mats;
  for (const auto& col : vals) {
    QMat m(static_cast<int>(col.size()), 1);
    for (size_t i = 0; i < col.size(); ++i) m.at(static_cast<int>(i), 0) = Q(col[i]);
    mats.push_back(m);
  }
  return seq_from(lo, std::move(mats));
}

inline Mask haar() {
  Mask m;
  m.r = 1;
  m.a = sseq(0, {"1/2", "1/2"});
  return m;
}

// Centered cubic B-spline mask (1/16){1,4,6,4,1} on [-2,2].
inline Mask bspline4() {
  Mask m;
  m.r = 1;
  m.a = sseq(-2, {"1/16", "1/4", "3/8", "1/4", "1/16"});
  return m;
}

// Nonzero random sequence with small rational entries; both end blocks are
// pinned nonzero so the support is stable under trimming.
inline Seq random_seq(std::mt19937& rng, int rows, int cols, int lo, int len,
                      bool complex_entries = true) {
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 4);
  std::vector<QMat> mats;
  for (int t = 0; t < len; ++t) {
    QMat m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) {
        Rat re = rat(num(rng), den(rng));
        Rat im = complex_entries ? rat(num(rng), den(rng)) : Rat(0);
        m.at(i, j) = GaussRat(re, im);
      }
    mats.push_back(m);
  }
  mats.front().at(0, 0) += GaussRat(7);
  mats.back().at(rows - 1, cols - 1) += GaussRat(5);
  return seq_from(lo, std::move(mats));
}

inline double cdist(const CMat& x, const CMat& y) {
  double d = 0;
  for (size_t k = 0; k < x.a.size(); ++k) d = std::max(d, std::abs(x.a[k] - y.a[k]));
  return d;
}

}  // namespace testutil
