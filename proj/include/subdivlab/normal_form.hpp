#pragma once

#include "subdivlab/mask.hpp"

namespace subdivlab {

// Scalar sequence on the window {0..m} whose symbol matches the given 1x1
// jet through order m (Vandermonde interpolation of the moments).
Seq realize_on_window(const Jet& jet, int m);

struct U1Result {
  Seq u;  // r x r sequence with det = c * delta(. - k)
  // Entry permutation applied to the filter before building, recorded as the
  // image list; identity when the first filter entry is nonzero at 0.
  std::vector<int> perm;
};

// Strongly invertible U with filter * U = [1, 0, ..., 0] + O(xi^{m+1}).
// For r = 1 only m = 0 keeps the determinant a monomial; higher orders throw.
U1Result build_U1(const Jet& filter, int m);

// Determinant in the sequence ring (entries convolve).
Seq seq_det(const Seq& u);

// Exact inverse of a strongly invertible sequence: adjugate divided by the
// monomial determinant.  Throws UnsupportedOperation when det is not a
// monomial.
Seq strongly_invertible_inverse(const Seq& u);

// Mask of the transformed scheme: symbol U(2 xi) a(xi) U(xi)^{-1}.
Mask similarity_transform(const Mask& mask, const Seq& U, const Seq& Uinv);

}  // namespace subdivlab
