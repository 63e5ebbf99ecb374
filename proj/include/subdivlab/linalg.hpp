#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "subdivlab/smallmat.hpp"

namespace subdivlab {

// Exact Gauss-Jordan over GaussRat.  Reduces m in place to reduced row
// echelon form and returns the pivot column indices in order.
std::vector<int> rref(QMat& m);

// RREF-canonical nullspace basis: one vector per free column, in increasing
// free-column order, with the free coordinate set to 1.
std::vector<std::vector<GaussRat>> nullspace(const QMat& m);

// Solve A x = b.  Returns nothing when inconsistent; otherwise the particular
// solution with all free coordinates zero plus the nullspace basis.
std::optional<std::pair<std::vector<GaussRat>, std::vector<std::vector<GaussRat>>>>
solve_affine(const QMat& A, const std::vector<GaussRat>& b);

// Throws SingularSystem when not invertible.
QMat inverse(const QMat& m);

GaussRat det(const QMat& m);

}  // namespace subdivlab
