#pragma once

#include <complex>
#include <string>
#include <vector>

#include "subdivlab/linalg.hpp"
#include "subdivlab/mask.hpp"

namespace subdivlab {

struct SpectralReport {
  std::vector<std::complex<double>> eigenvalues;  // of the symbol at 0
  double gap_tol = 1e-9;
  bool one_is_simple = false;
  // 1 is a simple eigenvalue and no 2^k, k >= 1, is an eigenvalue.
  bool cond_a0 = false;
  // Largest m with every non-unit eigenvalue of modulus < 2^{-m}; -1 when
  // even m = 0 fails.
  int m_tilde = -1;
  int order = 0;            // the m this report was asked about
  bool cond_a_at_order = false;  // one_is_simple && order <= m_tilde
};
SpectralReport spectral_report(const Mask& mask, int m);

// Exact left eigenvector v a^(0) = v, first nonzero entry 1.  Throws
// AmbiguousEigenvector when the eigenspace is not one-dimensional.
std::vector<GaussRat> left_one_eigenvector(const Mask& mask);

// Filter jets tau_0..tau_m solving tau^(2 xi) a^(xi) = tau^(xi) + O(xi^{m+1}).
// When the order-by-order extension is singular but consistent, the slack is
// resolved against the quadrature identity at pi so the result stays canonical.
FilterJet matching_filter_moments(const Mask& mask, int m);

struct FilterCheck {
  bool ok = false;
  int first_failure = -1;  // order of the first violated identity, -1 if none
};
FilterCheck verify_matching_filter(const Mask& mask, const Jet& filter);

struct SumRules {
  int order = 0;      // sr(a)
  FilterJet filter;   // canonical witness, jets 0..order-1
};
// Largest order <= cap at which the sum rules admit a filter.
SumRules sum_rule_order(const Mask& mask, int cap = 16);

struct SchemeClass {
  std::string tag;  // lagrange | hermite | generalized-hermite | scalar-type |
                    // balanced | unclassified
  int order = 0;    // the m the template was evaluated at
  bool fast = false;
  std::vector<int> nu;     // generalized-hermite exponents when applicable
  bool c_is_delta = false;  // balanced only
};
// Winner under the precedence balanced > hermite > generalized-hermite >
// scalar-type > lagrange; generalized-hermite requires max nu > 0 so the
// all-zero exponent vector falls through to lagrange.
SchemeClass classify_scheme(const Jet& filter, int r, int m);
// Every matching template in precedence order (winner first).
std::vector<SchemeClass> classify_all(const Jet& filter, int r, int m);
// Direct template predicate, including nu = (0,...,0).
bool matches_generalized_hermite(const Jet& filter, const std::vector<int>& nu, int m);

// Affine family of masks on [lo, hi] satisfying sum rules of order m_a with a
// prescribed filter, plus an optional symmetry.
struct MaskFamily {
  int r = 1;
  int lo = 0, hi = 0;
  std::vector<GaussRat> particular;
  std::vector<std::vector<GaussRat>> basis;

  Mask member(const std::vector<GaussRat>& coeffs) const;
  Mask particular_mask() const { return member(std::vector<GaussRat>(basis.size(), GaussRat(0))); }
  bool contains(const Mask& m) const;
};
MaskFamily design_mask(int lo, int hi, int r, const std::optional<Symmetry>& sym,
                       int m_a, const Jet& filter);

}  // namespace subdivlab
