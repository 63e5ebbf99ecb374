#pragma once

#include "subdivlab/sequence.hpp"

namespace subdivlab {

// Piecewise-polynomial closed form for a vector of functions on [-N, N].
// Piece p holds, for each component, coefficients in powers of x valid on
// [p, p+1); the value at x = N comes from the last piece.  Negative x is
// evaluated by even reflection, so eval(x, d) = (-1)^d eval(-x, d) there.
struct SplineOracle {
  int r = 0;
  // pieces[p][component][power]
  std::vector<std::vector<std::vector<GaussRat>>> pieces;

  long support() const { return static_cast<long>(pieces.size()); }
  // d-th derivative at a rational point, exact; zero outside [-N, N].
  std::vector<GaussRat> eval(const Rat& x, int deriv = 0) const;
};

}  // namespace subdivlab
