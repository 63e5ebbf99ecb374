#include "subdivlab/eigen.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace subdivlab {

std::vector<std::complex<double>> float_eigenvalues(const CMat& m) {
  if (m.rows != m.cols) throw DimensionMismatch("eigenvalues of non-square matrix");
  Eigen::MatrixXcd em(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) em(i, j) = m.at(i, j);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(em, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw SingularSystem("float eigenvalue solver failed to converge");
  std::vector<std::complex<double>> out(static_cast<size_t>(m.rows));
  for (int i = 0; i < m.rows; ++i) out[static_cast<size_t>(i)] = solver.eigenvalues()(i);
  auto key = [](const std::complex<double>& z) {
    return std::make_pair(std::round(z.real() * 1e9) / 1e9, std::round(z.imag() * 1e9) / 1e9);
  };
  std::sort(out.begin(), out.end(),
            [&](const std::complex<double>& a, const std::complex<double>& b) {
              return key(a) < key(b);
            });
  return out;
}

}  // namespace subdivlab
