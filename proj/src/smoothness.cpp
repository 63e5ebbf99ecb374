#include "subdivlab/smoothness.hpp"

#include <cmath>

namespace subdivlab {

GeneratorBasis generator_basis(const Jet& filter, int j, const Seq& U1) {
  if (j < 0) throw DimensionMismatch("generator basis order must be nonnegative");
  int r = U1.rows;
  if (U1.cols != r || filter.cols != r)
    throw DimensionMismatch("generator basis shape mismatch");
  // Over one channel the filter is an invertible power series (nonzero constant
  // term), so differences of the delta column generate without any reduction.
  if (j > 0 && r > 1) {
    if (filter.order() < j - 1)
      throw DimensionMismatch("filter order too small for the requested basis order");
    Jet prod = jet_mul_trunc(filter, jet_of(U1, JetBase::zero, j - 1), j - 1);
    for (int d = 0; d < j; ++d)
      for (int l = 0; l < r; ++l) {
        GaussRat want = (d == 0 && l == 0) ? GaussRat(1) : GaussRat(0);
        if (prod.c[static_cast<size_t>(d)].at(0, l) != want)
          throw NormalizationFailure(
              "U1 does not reduce the filter to [1, 0, ...] through order " +
              std::to_string(j - 1));
      }
  }
  GeneratorBasis out;
  out.order = j;
  out.members.push_back(difference(seq_column(U1, 0), j));
  for (int l = 1; l < r; ++l) out.members.push_back(seq_column(U1, l));
  return out;
}

namespace {

// Complex integer with exact arithmetic; masks and members are rescaled to
// these before the deep iteration so no rational normalization happens in
// the hot loop.
struct GInt {
  mpz_class re, im;
};

void addmul(GInt& acc, const GInt& a, const GInt& b) {
  mpz_addmul(acc.re.get_mpz_t(), a.re.get_mpz_t(), b.re.get_mpz_t());
  mpz_submul(acc.re.get_mpz_t(), a.im.get_mpz_t(), b.im.get_mpz_t());
  mpz_addmul(acc.im.get_mpz_t(), a.re.get_mpz_t(), b.im.get_mpz_t());
  mpz_addmul(acc.im.get_mpz_t(), a.im.get_mpz_t(), b.re.get_mpz_t());
}

double log2_mpz(const mpz_class& z) {
  size_t bits = mpz_sizeinbase(z.get_mpz_t(), 2);
  if (bits <= 1000) return std::log2(z.get_d());
  long shift = static_cast<long>(bits) - 64;
  mpz_class t = z >> static_cast<unsigned long>(shift);
  return static_cast<double>(shift) + std::log2(t.get_d());
}

mpz_class denominator_lcm(const Seq& s) {
  mpz_class l(1);
  for (const QMat& m : s.c)
    for (const GaussRat& x : m.a) {
      mpz_class d = x.re.get_den();
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
      d = x.im.get_den();
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
  return l;
}

std::vector<GInt> integerize(const Seq& s, const mpz_class& scale, int* lo, int* len) {
  *lo = s.lo;
  *len = s.empty() ? 0 : (s.hi() - s.lo + 1);
  std::vector<GInt> out(static_cast<size_t>(*len) * s.rows * s.cols);
  size_t t = 0;
  for (const QMat& m : s.c)
    for (const GaussRat& x : m.a) {
      Rat re = x.re * Rat(scale, 1);
      Rat im = x.im * Rat(scale, 1);
      if (re.get_den() != 1 || im.get_den() != 1)
        throw SingularSystem("integer rescaling failed; denominator survived");
      out[t].re = re.get_num();
      out[t].im = im.get_num();
      ++t;
    }
  return out;
}

}  // namespace

double log2q(const Rat& x) { return log2_mpz(x.get_num()) - log2_mpz(x.get_den()); }

RhoReport rho_estimate(const Mask& mask, const GeneratorBasis& basis, int p, int n_max) {
  if (p != 2 && p != 0)
    throw UnsupportedOperation("rho_estimate supports p = 2 and the sup norm (p = 0)");
  if (n_max < 4) throw DimensionMismatch("rho_estimate needs n_max >= 4");
  int r = mask.r;
  mpz_class D = denominator_lcm(mask.a);
  int a_lo, a_len;
  std::vector<GInt> A = integerize(mask.a, D, &a_lo, &a_len);
  double logD = log2_mpz(D);

  RhoReport rep;
  rep.p = p;
  rep.n_max = n_max;
  for (const Seq& u : basis.members) {
    if (u.rows != r || u.cols != 1)
      throw DimensionMismatch("basis members must be r x 1 sequences");
    if (u.empty()) throw DimensionMismatch("zero basis member");
    mpz_class Du = denominator_lcm(u);
    int u_lo, u_len;
    std::vector<GInt> w = integerize(u, Du, &u_lo, &u_len);
    double logDu = log2_mpz(Du);
    int len = u_len;

    RhoEstimate est;
    for (int n = 0; n < n_max; ++n) {
      // w <- (a upsampled by 2^n) * w, with all entries integer multiples.
      long step = 1L << n;
      int out_len = len + static_cast<int>((a_len - 1) * step);
      std::vector<GInt> out(static_cast<size_t>(out_len) * r);
      for (int km = 0; km < a_len; ++km) {
        const GInt* blk = &A[static_cast<size_t>(km) * r * r];
        bool zero = true;
        for (int t = 0; t < r * r && zero; ++t)
          if (blk[t].re != 0 || blk[t].im != 0) zero = false;
        if (zero) continue;
        long base = km * step;
        for (int ppos = 0; ppos < len; ++ppos) {
          const GInt* wp = &w[static_cast<size_t>(ppos) * r];
          GInt* op = &out[static_cast<size_t>(base + ppos) * r];
          for (int i = 0; i < r; ++i)
            for (int jj = 0; jj < r; ++jj) addmul(op[i], blk[static_cast<size_t>(i) * r + jj], wp[jj]);
        }
      }
      w = std::move(out);
      len = out_len;

      mpz_class S(0);
      if (p == 2) {
        for (const GInt& x : w) {
          mpz_addmul(S.get_mpz_t(), x.re.get_mpz_t(), x.re.get_mpz_t());
          mpz_addmul(S.get_mpz_t(), x.im.get_mpz_t(), x.im.get_mpz_t());
        }
      } else {
        for (const GInt& x : w) {
          mpz_class v = x.re * x.re + x.im * x.im;
          if (v > S) S = v;
        }
      }
      if (S == 0) {
        est.lognorms.push_back(-std::numeric_limits<double>::infinity());
        break;
      }
      // log2 s_{n+1} with s_m = || 2^m a_m * u ||, undoing the D and Du scales.
      est.lognorms.push_back((n + 1) + 0.5 * log2_mpz(S) - (n + 1) * logD - logDu);
    }
    for (size_t t = 1; t < est.lognorms.size(); ++t)
      est.ratio_history.push_back(std::exp2(est.lognorms[t] - est.lognorms[t - 1]));
    int tail = std::min<int>(4, static_cast<int>(est.ratio_history.size()));
    double acc = 0.0;
    for (int t = 0; t < tail; ++t)
      acc += est.ratio_history[est.ratio_history.size() - 1 - static_cast<size_t>(t)];
    est.ratio = tail > 0 ? acc / tail : 0.0;
    est.root = std::exp2(est.lognorms.back() / static_cast<double>(est.lognorms.size()));
    rep.members.push_back(std::move(est));
  }
  for (const RhoEstimate& e : rep.members) {
    rep.rho = std::max(rep.rho, e.ratio);
    rep.spread = std::max(rep.spread, std::abs(e.root - e.ratio));
  }
  return rep;
}

SmoothnessReport sm_report(const Mask& mask, int n_max) {
  SumRules sr = sum_rule_order(mask);
  if (sr.order == 0)
    throw InfeasibleSystem("mask satisfies no sum rules; smoothness estimation needs order >= 1");
  SmoothnessReport rep;
  rep.sr = sr.order;
  rep.filter = sr.filter;
  U1Result u1 = build_U1(sr.filter, mask.r == 1 ? 0 : std::max(sr.order - 1, 0));
  GeneratorBasis basis = generator_basis(sr.filter, sr.order, u1.u);
  rep.rho2 = rho_estimate(mask, basis, 2, n_max);
  rep.sm2 = 0.5 - std::log2(rep.rho2.rho);
  rep.sminf_lo = rep.sm2 - 0.5;
  rep.sminf_hi = rep.sm2;
  return rep;
}

}  // namespace subdivlab
