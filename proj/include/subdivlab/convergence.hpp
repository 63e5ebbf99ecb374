#pragma once

#include "subdivlab/engine.hpp"
#include "subdivlab/smoothness.hpp"

namespace subdivlab {

struct ErrorCurveOptions {
  std::optional<int> j_override;  // derivative order; scanned from the jets when absent
  std::optional<int> scan_order;  // m for the leading-degree scan (default from sm2)
  int n_max = 10;
  int tail = 5;
  int ref_shift = 0;  // translate the reference samples phi^{(j)}(. - ref_shift)
};

struct ErrorCurve {
  int j = 0;
  GaussRat beta;
  bool degenerate = false;  // coefficient at the requested order vanished
  int scan_order = 0;
  int n_max = 0;
  int exact_through = 0;          // deepest exactly computed level
  std::vector<double> neglog2;    // -log2 E_u(n), n = 1..n_max
  std::vector<bool> exact_zero;   // E_u(n) == 0 exactly
  bool exact_reproduction = false;
  double slope = 0.0;  // fitted tail slope; +inf on exact reproduction
  int tail = 5;
};

// E_u(n) = sup_k | 2^{jn} [(S^n delta I) * u](k) - beta phi^{(j)}(2^{-n} k - ref_shift) |,
// evaluated through the identity E_u(n) = 2^{(j+1)n} || a_n * (u - beta u_phi) ||_sup.
// Exact through level 12; float with log rescaling beyond.
ErrorCurve error_curve(const Mask& mask, const Jet& filter, const Seq& u,
                       const ErrorCurveOptions& opts = {});

// Least-squares slope of -log2 E over the last `tail` levels; +inf when the
// window contains an exact zero (exact reproduction).
double fit_rate(const std::vector<double>& neglog2, const std::vector<bool>& exact_zero,
                int tail);

// First order t > j at which the jets of filter * u leave beta (i xi)^j,
// returned as s = t - j; -1 when no deviation shows through the filter order.
int deviation_order(const Jet& filter, const Seq& u, int j, const GaussRat& beta);

// v_n = S^n(delta I) * u for n = 1..levels.
std::vector<Seq> iterate_path(const Mask& mask, const Seq& u, int levels);

struct TauStar {
  double tau = 0.0;  // minus the fitted slope of log2 sup |v_n| over the window
  std::vector<double> lognorms;
  bool monotone_tail = false;
};
TauStar tau_star_estimate(const std::vector<Seq>& iterates, const Rat& window, int tail = 5);

struct Verdict {
  std::string verdict;  // consistent-with-C^m-convergence | inconsistent | inconclusive
  int order = 0;
  std::vector<ErrorCurve> curves;
  double sm2 = 0.0;
  double sminf_lo = 0.0, sminf_hi = 0.0;
  std::string note;
};
// Consistency cross-check at order m: derivative-order-m error curves for
// every generator-basis member, judged together with the sm2 bracket.
Verdict convergence_verdict(const Mask& mask, const Jet& filter, const GeneratorBasis& basis,
                            int m, int n_max = 8);

}  // namespace subdivlab
