#pragma once

#include <optional>

#include "subdivlab/mask.hpp"

namespace subdivlab {

// Memory guard for exact refinement: levels above this throw ResourceLimit.
// Default 12, overridable through the SUBDIVLAB_MAX_LEVEL environment variable.
int max_level_guard();

// One subdivision step (S_a w)(j) = 2 sum_k w(k) a(j - 2k) for s x r data w.
Seq subdivide_step(const Mask& mask, const Seq& w);

// n steps from w0; n = 0 returns w0.
Seq iterate(const Mask& mask, const Seq& w0, int n);

// Transition step (T_a u)(j) = 2 sum_k a(k) u(2j - k) for r x s data u.
Seq transition_step(const Mask& mask, const Seq& u);

// Transition operator restricted to the support window of the mask, in
// position-major block layout: M[(p-lo)r+i][(q-lo)r+j] = 2 a(2p-q)[i][j].
struct Transition {
  int lo = 0, hi = 0;
  int r = 1;
  QMat M;
};
Transition transition_matrix(const Mask& mask);
std::vector<std::complex<double>> transition_eigenvalues(const Mask& mask);

// Exact integer samples u(k) = phi^{(j)}(k): the 2^{-j}-eigenvector of the
// transition matrix, normalized so the filter moments give i^j at order j and
// 0 below.  The float spectrum is gap-checked before the exact solve; ties
// raise AmbiguousEigenvector rather than being broken silently.
Seq phi_integer_samples(const Mask& mask, const Jet& filter, int j);

struct DyadicSamples {
  int j = 0, n = 0;
  int rows = 1;  // components per sample
  int lo = 0;    // sample k sits at x = (lo + k) / 2^n
  std::vector<std::vector<GaussRat>> values;
};

// phi^{(j)} on 2^{-n} Z, exact: 2^{jn} [ (S^n delta I) * u_phi ](k).
DyadicSamples dyadic_values(const Mask& mask, const Jet& filter, int j, int n);

// eta = sum_k w0(k) phi(. - k) for s x r data w0, sampled on 2^{-n} Z;
// `window` restricts to |x| <= window.
DyadicSamples limit_function_samples(const Mask& mask, const Jet& filter, const Seq& w0,
                                     int j, int n, std::optional<Rat> window = std::nullopt);

}  // namespace subdivlab
