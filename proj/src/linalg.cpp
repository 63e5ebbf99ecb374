#include "subdivlab/linalg.hpp"

namespace subdivlab {

std::vector<int> rref(QMat& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int sel = -1;
    for (int i = row; i < m.rows; ++i)
      if (!m.at(i, col).is_zero()) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    if (sel != row)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(row, j));
    GaussRat inv = GaussRat(1) / m.at(row, col);
    for (int j = col; j < m.cols; ++j) m.at(row, j) *= inv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == row) continue;
      GaussRat f = m.at(i, col);
      if (f.is_zero()) continue;
      for (int j = col; j < m.cols; ++j) m.at(i, j) -= f * m.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::vector<std::vector<GaussRat>> nullspace(const QMat& m_in) {
  QMat m = m_in;
  std::vector<int> pivots = rref(m);
  std::vector<bool> is_pivot(m.cols, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<std::vector<GaussRat>> basis;
  for (int free = 0; free < m.cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<GaussRat> v(m.cols, GaussRat(0));
    v[free] = GaussRat(1);
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(static_cast<int>(r), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::pair<std::vector<GaussRat>, std::vector<std::vector<GaussRat>>>>
solve_affine(const QMat& A, const std::vector<GaussRat>& b) {
  if (static_cast<int>(b.size()) != A.rows)
    throw DimensionMismatch("solve_affine rhs length mismatch");
  QMat aug(A.rows, A.cols + 1);
  for (int i = 0; i < A.rows; ++i) {
    for (int j = 0; j < A.cols; ++j) aug.at(i, j) = A.at(i, j);
    aug.at(i, A.cols) = b[static_cast<size_t>(i)];
  }
  std::vector<int> pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == A.cols) return std::nullopt;
  std::vector<GaussRat> part(A.cols, GaussRat(0));
  for (size_t r = 0; r < pivots.size(); ++r)
    part[pivots[r]] = aug.at(static_cast<int>(r), A.cols);
  std::vector<bool> is_pivot(A.cols, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<std::vector<GaussRat>> basis;
  for (int free = 0; free < A.cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<GaussRat> v(A.cols, GaussRat(0));
    v[free] = GaussRat(1);
    for (size_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = -aug.at(static_cast<int>(r), free);
    basis.push_back(std::move(v));
  }
  return std::make_pair(std::move(part), std::move(basis));
}

QMat inverse(const QMat& m) {
  if (m.rows != m.cols) throw DimensionMismatch("inverse of non-square matrix");
  int n = m.rows;
  QMat aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = GaussRat(1);
  }
  std::vector<int> pivots = rref(aug);
  if (static_cast<int>(pivots.size()) != n || pivots[static_cast<size_t>(n) - 1] != n - 1)
    throw SingularSystem("matrix is singular");
  QMat out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.at(i, j) = aug.at(i, n + j);
  return out;
}

GaussRat det(const QMat& m_in) {
  if (m_in.rows != m_in.cols) throw DimensionMismatch("det of non-square matrix");
  QMat m = m_in;
  int n = m.rows;
  GaussRat d(1);
  for (int col = 0; col < n; ++col) {
    int sel = -1;
    for (int i = col; i < n; ++i)
      if (!m.at(i, col).is_zero()) {
        sel = i;
        break;
      }
    if (sel < 0) return GaussRat(0);
    if (sel != col) {
      for (int j = 0; j < n; ++j) std::swap(m.at(sel, j), m.at(col, j));
      d = -d;
    }
    d *= m.at(col, col);
    GaussRat inv = GaussRat(1) / m.at(col, col);
    for (int i = col + 1; i < n; ++i) {
      GaussRat f = m.at(i, col) * inv;
      if (f.is_zero()) continue;
      for (int j = col; j < n; ++j) m.at(i, j) -= f * m.at(col, j);
    }
  }
  return d;
}

}  // namespace subdivlab
