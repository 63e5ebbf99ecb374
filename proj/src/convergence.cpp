#include "subdivlab/convergence.hpp"

#include <cmath>
#include <limits>

namespace subdivlab {

namespace {

constexpr int kExactCap = 12;   // exact arithmetic through this level
constexpr int kLevelCap = 20;   // float continuation beyond this is refused

double lsq_slope(const std::vector<std::pair<double, double>>& pts) {
  double n = static_cast<double>(pts.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& p : pts) {
    sx += p.first;
    sy += p.second;
    sxx += p.first * p.first;
    sxy += p.first * p.second;
  }
  double den = n * sxx - sx * sx;
  if (den == 0) return 0.0;
  return (n * sxy - sx * sy) / den;
}

}  // namespace

double fit_rate(const std::vector<double>& neglog2, const std::vector<bool>& exact_zero,
                int tail) {
  if (neglog2.empty()) return std::numeric_limits<double>::infinity();
  size_t t = std::min<size_t>(static_cast<size_t>(std::max(tail, 2)), neglog2.size());
  size_t first = neglog2.size() - t;
  std::vector<std::pair<double, double>> pts;
  for (size_t i = first; i < neglog2.size(); ++i) {
    if (exact_zero[i]) return std::numeric_limits<double>::infinity();
    pts.emplace_back(static_cast<double>(i + 1), neglog2[i]);
  }
  if (pts.size() < 2) return 0.0;
  return lsq_slope(pts);
}

int deviation_order(const Jet& filter, const Seq& u, int j, const GaussRat& beta) {
  int M = filter.order();
  Jet g = jet_mul_trunc(filter, jet_of(u, JetBase::zero, M), M);
  if (j <= M) g.c[static_cast<size_t>(j)].at(0, 0) -= beta * GaussRat::i_pow(j);
  for (int t = 0; t <= M; ++t)
    if (!g.c[static_cast<size_t>(t)].at(0, 0).is_zero()) return t - j;
  return -1;
}

ErrorCurve error_curve(const Mask& mask, const Jet& filter, const Seq& u,
                       const ErrorCurveOptions& opts) {
  if (u.rows != mask.r || u.cols != 1)
    throw DimensionMismatch("error curve input must be an r x 1 sequence");
  if (opts.n_max < 1 || opts.n_max > kLevelCap)
    throw ResourceLimit("error curve levels must lie in [1, 20]");

  ErrorCurve ec;
  ec.n_max = opts.n_max;
  ec.tail = opts.tail;

  // Resolve the derivative order j and the leading coefficient beta with
  // filter(xi) u^(xi) = beta (i xi)^j + higher order.
  if (opts.j_override) {
    ec.j = *opts.j_override;
    if (ec.j < 0 || ec.j > filter.order())
      throw DimensionMismatch("requested derivative order exceeds the filter order");
    ec.scan_order = ec.j;
    Jet g = jet_mul_trunc(filter, jet_of(u, JetBase::zero, ec.j), ec.j);
    ec.beta = g.c[static_cast<size_t>(ec.j)].at(0, 0) / GaussRat::i_pow(ec.j);
    ec.degenerate = ec.beta.is_zero();
  } else {
    int m;
    if (opts.scan_order) {
      m = *opts.scan_order;
    } else {
      SmoothnessReport sm = sm_report(mask);
      double mid = sm.sm2 - 0.25;  // midpoint of the [sm2 - 1/2, sm2] bracket
      m = static_cast<int>(std::floor(mid));
      if (static_cast<double>(m) >= mid) --m;
      if (m < 0) m = 0;
    }
    if (m > filter.order()) m = filter.order();
    ec.scan_order = m;
    Jet g = jet_mul_trunc(filter, jet_of(u, JetBase::zero, m), m);
    auto lead = leading_degree(g, m);
    ec.j = lead.first;
    ec.beta = lead.second;
    ec.degenerate = ec.beta.is_zero();
  }

  Seq uphi = phi_integer_samples(mask, filter, ec.j);
  Seq d = seq_sub(u, seq_scale(seq_shift(uphi, opts.ref_shift), ec.beta));
  d.trim();

  const double inf = std::numeric_limits<double>::infinity();
  int exact_levels = std::min(opts.n_max, kExactCap);
  Seq v = d;
  bool dead = v.empty();
  for (int n = 1; n <= exact_levels; ++n) {
    if (!dead) {
      v = seq_conv(upsample(mask.a, 1L << (n - 1)), v);
      v.trim();
      dead = v.empty();
    }
    if (dead) {
      ec.neglog2.push_back(inf);
      ec.exact_zero.push_back(true);
      continue;
    }
    Rat m2 = max_abs2(v);
    ec.neglog2.push_back(-(ec.j + 1) * static_cast<double>(n) - 0.5 * log2q(m2));
    ec.exact_zero.push_back(false);
    ec.exact_through = n;
  }

  if (opts.n_max > exact_levels) {
    // Continue in floating point with running log2 rescaling.
    FSeq vf = to_float(v);
    FSeq af = to_float(mask.a);
    double logsc = 0.0;
    for (int n = exact_levels + 1; n <= opts.n_max; ++n) {
      if (!dead) {
        vf = seq_conv(upsample(af, 1L << (n - 1)), vf);
        double mx = 0.0;
        for (const auto& blk : vf.c)
          for (const auto& z : blk.a) mx = std::max(mx, std::abs(z));
        if (mx == 0.0) {
          dead = true;
        } else {
          ec.neglog2.push_back(-(ec.j + 1) * static_cast<double>(n) - (logsc + std::log2(mx)));
          ec.exact_zero.push_back(false);
          logsc += std::log2(mx);
          for (auto& blk : vf.c)
            for (auto& z : blk.a) z /= mx;
        }
      }
      if (dead && static_cast<int>(ec.neglog2.size()) < n) {
        ec.neglog2.push_back(inf);
        ec.exact_zero.push_back(true);
      }
    }
  }

  size_t t = std::min<size_t>(static_cast<size_t>(std::max(opts.tail, 2)), ec.neglog2.size());
  for (size_t i = ec.neglog2.size() - t; i < ec.neglog2.size(); ++i)
    if (ec.exact_zero[i]) ec.exact_reproduction = true;
  ec.slope = fit_rate(ec.neglog2, ec.exact_zero, opts.tail);
  return ec;
}

std::vector<Seq> iterate_path(const Mask& mask, const Seq& u, int levels) {
  if (u.rows != mask.r) throw DimensionMismatch("iterate input row count must match the mask");
  if (levels < 1 || levels > kLevelCap) throw ResourceLimit("iterate levels must lie in [1, 20]");
  std::vector<Seq> out;
  Seq v = u;
  for (int n = 1; n <= levels; ++n) {
    v = seq_scale(seq_conv(upsample(mask.a, 1L << (n - 1)), v), GaussRat(2));
    v.trim();
    out.push_back(v);
  }
  return out;
}

TauStar tau_star_estimate(const std::vector<Seq>& iterates, const Rat& window, int tail) {
  if (iterates.empty()) throw DimensionMismatch("tau estimation needs at least one iterate");
  if (window <= 0) throw DimensionMismatch("tau estimation window must be positive");
  TauStar ts;
  const double inf = std::numeric_limits<double>::infinity();
  for (size_t t = 0; t < iterates.size(); ++t) {
    const Seq& v = iterates[t];
    // sup over |k| <= 2^n * window at level n = t + 1.
    Rat b = window * Rat(mpz_class(1) << (t + 1));
    mpz_class w;
    mpz_fdiv_q(w.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
    long W = w.get_si();
    Rat m2 = 0;
    for (long k = std::max(static_cast<long>(v.lo), -W);
         k <= std::min(static_cast<long>(v.hi()), W); ++k) {
      const QMat& blk = v.c[static_cast<size_t>(k - v.lo)];
      for (const GaussRat& z : blk.a) {
        Rat a2 = z.abs2();
        if (a2 > m2) m2 = a2;
      }
    }
    ts.lognorms.push_back(m2 == 0 ? -inf : 0.5 * log2q(m2));
  }
  size_t t = std::min<size_t>(static_cast<size_t>(std::max(tail, 2)), ts.lognorms.size());
  size_t first = ts.lognorms.size() - t;
  std::vector<std::pair<double, double>> pts;
  bool collapsed = false;
  ts.monotone_tail = true;
  for (size_t i = first; i < ts.lognorms.size(); ++i) {
    if (ts.lognorms[i] == -inf) collapsed = true;
    if (i > first && ts.lognorms[i] > ts.lognorms[i - 1]) ts.monotone_tail = false;
    pts.emplace_back(static_cast<double>(i + 1), ts.lognorms[i]);
  }
  ts.tau = collapsed ? inf : (pts.size() < 2 ? 0.0 : -lsq_slope(pts));
  return ts;
}

Verdict convergence_verdict(const Mask& mask, const Jet& filter, const GeneratorBasis& basis,
                            int m, int n_max) {
  if (filter.order() < m)
    throw DimensionMismatch("verdict order exceeds the filter order");
  Verdict vd;
  vd.order = m;
  try {
    SmoothnessReport sm = sm_report(mask);
    vd.sm2 = sm.sm2;
    vd.sminf_lo = sm.sminf_lo;
    vd.sminf_hi = sm.sminf_hi;
  } catch (const SubdivError& e) {
    vd.note = std::string("smoothness estimate unavailable: ") + e.what();
  }

  try {
    (void)phi_integer_samples(mask, filter, m);
  } catch (const SubdivError& e) {
    vd.verdict = "inconsistent";
    vd.note = std::string("no order-") + std::to_string(m) +
              " derivative samples: " + e.what();
    return vd;
  }

  ErrorCurveOptions opts;
  opts.j_override = m;
  opts.n_max = n_max;
  bool any_negative = false;
  bool all_positive = true;
  for (const Seq& u : basis.members) {
    ErrorCurve ec = error_curve(mask, filter, u, opts);
    if (!ec.exact_reproduction && ec.slope <= -0.1) any_negative = true;
    if (!ec.exact_reproduction && ec.slope < 0.1) all_positive = false;
    vd.curves.push_back(std::move(ec));
  }

  double mid = vd.sm2 - 0.25;
  if (any_negative || vd.sminf_hi < static_cast<double>(m)) {
    vd.verdict = "inconsistent";
    if (vd.note.empty())
      vd.note = any_negative ? "an error curve grows with the level"
                             : "the smoothness bracket lies below the requested order";
  } else if (all_positive && mid > static_cast<double>(m)) {
    vd.verdict = "consistent-with-C^" + std::to_string(m) + "-convergence";
  } else {
    vd.verdict = "inconclusive";
    if (vd.note.empty())
      vd.note = all_positive ? "the smoothness bracket does not clear the requested order"
                             : "an error curve slope sits inside the dead band [-0.1, 0.1]";
  }
  return vd;
}

}  // namespace subdivlab
