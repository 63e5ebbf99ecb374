#include "subdivlab/engine.hpp"

#include <cmath>
#include <cstdlib>

#include "subdivlab/eigen.hpp"
#include "subdivlab/linalg.hpp"

namespace subdivlab {

int max_level_guard() {
  const char* env = std::getenv("SUBDIVLAB_MAX_LEVEL");
  if (!env) return 12;
  int v = std::atoi(env);
  return v > 0 ? v : 12;
}

static void check_level(int n) {
  int guard = max_level_guard();
  if (n > guard)
    throw ResourceLimit("refinement level " + std::to_string(n) +
                        " exceeds the guard of " + std::to_string(guard) +
                        " (set SUBDIVLAB_MAX_LEVEL to raise it)");
  if (n < 0) throw DimensionMismatch("refinement level must be nonnegative");
}

Seq subdivide_step(const Mask& mask, const Seq& w) {
  if (w.cols != mask.r) throw DimensionMismatch("subdivision data must have r columns");
  if (w.empty() || mask.a.empty()) return Seq(w.rows, mask.r);
  Seq out(w.rows, mask.r, 2 * w.lo + mask.a.lo, 2 * w.hi() + mask.a.hi());
  GaussRat two(2);
  for (int kv = w.lo; kv <= w.hi(); ++kv) {
    const QMat& wv = w.ref(kv);
    if (wv.is_zero()) continue;
    for (int ka = mask.a.lo; ka <= mask.a.hi(); ++ka)
      out.ref(ka + 2 * kv) += (wv * mask.a.ref(ka)).scaled(two);
  }
  out.trim();
  return out;
}

Seq iterate(const Mask& mask, const Seq& w0, int n) {
  check_level(n);
  Seq w = w0;
  for (int t = 0; t < n; ++t) w = subdivide_step(mask, w);
  return w;
}

Seq transition_step(const Mask& mask, const Seq& u) {
  if (u.rows != mask.r) throw DimensionMismatch("transition data must have r rows");
  if (u.empty() || mask.a.empty()) return Seq(mask.r, u.cols);
  int lo = ceil_div(u.lo + mask.a.lo, 2);
  int hi = floor_div(u.hi() + mask.a.hi(), 2);
  if (hi < lo) return Seq(mask.r, u.cols);
  Seq out(mask.r, u.cols, lo, hi);
  GaussRat two(2);
  for (int j = lo; j <= hi; ++j)
    for (int k = mask.a.lo; k <= mask.a.hi(); ++k) {
      int src = 2 * j - k;
      if (!u.in_support(src)) continue;
      out.ref(j) += (mask.a.ref(k) * u.ref(src)).scaled(two);
    }
  out.trim();
  return out;
}

Transition transition_matrix(const Mask& mask) {
  if (mask.a.empty()) throw DimensionMismatch("transition matrix of the zero mask");
  Transition t;
  t.lo = mask.a.lo;
  t.hi = mask.a.hi();
  t.r = mask.r;
  int w = t.hi - t.lo + 1;
  t.M = QMat(w * mask.r, w * mask.r);
  GaussRat two(2);
  for (int p = t.lo; p <= t.hi; ++p)
    for (int q = t.lo; q <= t.hi; ++q) {
      QMat blk = mask.a.get(2 * p - q).scaled(two);
      for (int i = 0; i < mask.r; ++i)
        for (int j = 0; j < mask.r; ++j)
          t.M.at((p - t.lo) * mask.r + i, (q - t.lo) * mask.r + j) = blk.at(i, j);
    }
  return t;
}

std::vector<std::complex<double>> transition_eigenvalues(const Mask& mask) {
  return float_eigenvalues(to_float(transition_matrix(mask).M));
}

Seq phi_integer_samples(const Mask& mask, const Jet& filter, int j) {
  if (j < 0) throw DimensionMismatch("derivative order must be nonnegative");
  if (filter.order() < j)
    throw DimensionMismatch("filter must carry jets through order j for normalization");
  Transition t = transition_matrix(mask);
  double target = std::ldexp(1.0, -j);
  int near = 0;
  for (const auto& z : float_eigenvalues(to_float(t.M)))
    if (std::abs(z - target) < 1e-9) ++near;
  if (near != 1)
    throw AmbiguousEigenvector("2^-" + std::to_string(j) +
                               " has multiplicity " + std::to_string(near) +
                               " in the float transition spectrum");
  QMat shifted = t.M;
  GaussRat ev(Rat(1, mpz_class(1) << j));
  for (int i = 0; i < shifted.rows; ++i) shifted.at(i, i) -= ev;
  auto basis = nullspace(shifted);
  if (basis.empty())
    throw SingularSystem("2^-" + std::to_string(j) +
                         " is not an eigenvalue of the exact transition matrix");
  if (basis.size() > 1)
    throw AmbiguousEigenvector("2^-" + std::to_string(j) +
                               " eigenspace of the transition matrix has dimension " +
                               std::to_string(basis.size()));
  Seq u(mask.r, 1, t.lo, t.hi);
  for (int p = t.lo; p <= t.hi; ++p)
    for (int i = 0; i < mask.r; ++i)
      u.ref(p).at(i, 0) = basis[0][static_cast<size_t>((p - t.lo) * mask.r + i)];
  u.trim();

  Jet moms = jet_of(u, JetBase::zero, j);
  Jet prod = jet_mul_trunc(filter, moms, j);
  for (int d = 0; d < j; ++d)
    if (!prod.c[static_cast<size_t>(d)].at(0, 0).is_zero())
      throw NormalizationFailure("filter moments of the eigenvector do not vanish below order " +
                                 std::to_string(j));
  GaussRat cj = prod.c[static_cast<size_t>(j)].at(0, 0);
  if (cj.is_zero())
    throw NormalizationFailure("eigenvector has vanishing order-" + std::to_string(j) +
                               " moment against the filter");
  return seq_scale(u, GaussRat::i_pow(j) / cj);
}

DyadicSamples dyadic_values(const Mask& mask, const Jet& filter, int j, int n) {
  Seq u = phi_integer_samples(mask, filter, j);
  Seq v = seq_conv(iterate(mask, delta_id(mask.r), n), u);
  GaussRat scale(Rat(mpz_class(1) << (static_cast<unsigned long>(j) * n), 1));
  v = seq_scale(v, scale);
  DyadicSamples out;
  out.j = j;
  out.n = n;
  out.rows = mask.r;
  // The grid covers the closed support interval even where samples vanish.
  out.lo = mask.a.lo * (1 << n);
  int khi = mask.a.hi() * (1 << n);
  for (int k = out.lo; k <= khi; ++k) {
    QMat mk = v.get(k);
    std::vector<GaussRat> row;
    for (int i = 0; i < mask.r; ++i) row.push_back(mk.at(i, 0));
    out.values.push_back(std::move(row));
  }
  return out;
}

DyadicSamples limit_function_samples(const Mask& mask, const Jet& filter, const Seq& w0,
                                     int j, int n, std::optional<Rat> window) {
  if (w0.cols != mask.r) throw DimensionMismatch("initial data must have r columns");
  check_level(n);
  Seq u = phi_integer_samples(mask, filter, j);
  Seq v = seq_conv(upsample(w0, 1 << n), seq_conv(iterate(mask, delta_id(mask.r), n), u));
  GaussRat scale(Rat(mpz_class(1) << (static_cast<unsigned long>(j) * n), 1));
  v = seq_scale(v, scale);
  DyadicSamples out;
  out.j = j;
  out.n = n;
  out.rows = w0.rows;
  // Closed support of sum_k w0(k) phi(. - k) on the level-n grid.
  int klo = (w0.lo + mask.a.lo) * (1 << n);
  int khi = (w0.hi() + mask.a.hi()) * (1 << n);
  if (window) {
    // |k / 2^n| <= K  <=>  -K 2^n <= k <= K 2^n
    Rat bound = *window * Rat(mpz_class(1) << n, 1);
    mpz_class floor_b, ceil_mb;
    mpz_fdiv_q(floor_b.get_mpz_t(), bound.get_num().get_mpz_t(), bound.get_den().get_mpz_t());
    Rat neg = -bound;
    mpz_cdiv_q(ceil_mb.get_mpz_t(), neg.get_num().get_mpz_t(), neg.get_den().get_mpz_t());
    klo = std::max(klo, static_cast<int>(ceil_mb.get_si()));
    khi = std::min(khi, static_cast<int>(floor_b.get_si()));
  }
  out.lo = klo;
  for (int k = klo; k <= khi; ++k) {
    QMat mk = v.get(k);
    std::vector<GaussRat> row;
    for (int i = 0; i < w0.rows; ++i) row.push_back(mk.at(i, 0));
    out.values.push_back(std::move(row));
  }
  return out;
}

}  // namespace subdivlab
