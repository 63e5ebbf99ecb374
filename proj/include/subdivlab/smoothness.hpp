#pragma once

#include "subdivlab/analysis.hpp"
#include "subdivlab/normal_form.hpp"

namespace subdivlab {

struct GeneratorBasis {
  int order = 0;             // j: members generate V_{j-1}
  std::vector<Seq> members;  // r x 1 sequences
};

// {D^j u_1, u_2, ..., u_r} for the columns u_l of U1; checks that U1
// normalizes the filter through order j-1 before handing the basis out.
GeneratorBasis generator_basis(const Jet& filter, int j, const Seq& U1);

struct RhoEstimate {
  double ratio = 0.0;  // arithmetic mean of the last ratio window
  double root = 0.0;   // s_n^{1/n} at the deepest level
  std::vector<double> ratio_history;
  std::vector<double> lognorms;  // log2 s_n, n = 1..n_max
};

struct RhoReport {
  double rho = 0.0;  // max of the member ratio estimates
  int p = 2;
  int n_max = 0;
  double spread = 0.0;  // largest |root - ratio| gap over members
  std::vector<RhoEstimate> members;
};

// Restricted spectral radius estimate via exact integer-scaled iterate norms;
// p is 2 or the sup norm (p = 0 stands for infinity).
RhoReport rho_estimate(const Mask& mask, const GeneratorBasis& basis, int p, int n_max);

struct SmoothnessReport {
  int sr = 0;
  FilterJet filter;
  RhoReport rho2;
  double sm2 = 0.0;
  double sminf_lo = 0.0, sminf_hi = 0.0;  // sm2 - 1/2 <= sm_inf <= sm2
  double tol = 0.05;
};

SmoothnessReport sm_report(const Mask& mask, int n_max = 16);

// log2 of a positive rational, safe for operands far outside double range.
double log2q(const Rat& x);

}  // namespace subdivlab
