#include "subdivlab/jet.hpp"

namespace subdivlab {

Rat factorial(int n) {
  Rat f(1);
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

Jet jet_of(const Seq& u, JetBase base, int m) {
  Jet out(base, u.rows, u.cols, m);
  for (int k = u.lo; u.in_support(k); ++k) {
    const QMat& mk = u.ref(k);
    if (mk.is_zero()) continue;
    // weight_j = (-ik)^j / j! * e^{-ik base}
    GaussRat sign = (base == JetBase::pi && (k % 2 != 0)) ? GaussRat(-1) : GaussRat(1);
    GaussRat w = sign;
    for (int j = 0; j <= m; ++j) {
      if (j > 0) w *= GaussRat(Rat(0), Rat(-k)) / GaussRat(Rat(j));
      if (w.is_zero() && j > 0) break;
      out.c[static_cast<size_t>(j)] += mk.scaled(w);
    }
  }
  return out;
}

static void check_same_frame(const Jet& a, const Jet& b, const char* what) {
  if (a.base != b.base) throw DimensionMismatch(std::string(what) + ": jet base mismatch");
  if (a.order() != b.order()) throw DimensionMismatch(std::string(what) + ": jet order mismatch");
}

Jet jet_add(const Jet& a, const Jet& b) {
  check_same_frame(a, b, "jet_add");
  if (a.rows != b.rows || a.cols != b.cols) throw DimensionMismatch("jet_add shape mismatch");
  Jet out = a;
  for (size_t j = 0; j < out.c.size(); ++j) out.c[j] += b.c[j];
  return out;
}

Jet jet_sub(const Jet& a, const Jet& b) { return jet_add(a, jet_scale(b, GaussRat(-1))); }

Jet jet_scale(Jet a, const GaussRat& c) {
  for (QMat& m : a.c) m = m.scaled(c);
  return a;
}

Jet jet_truncate(Jet a, int m) {
  if (m > a.order()) throw DimensionMismatch("jet_truncate beyond stored order");
  a.c.resize(static_cast<size_t>(m) + 1);
  return a;
}

Jet jet_mul_trunc(const Jet& a, const Jet& b, int m) {
  if (a.base != b.base) throw DimensionMismatch("jet_mul: jet base mismatch");
  if (a.cols != b.rows) throw DimensionMismatch("jet_mul shape mismatch");
  if (a.order() < m || b.order() < m)
    throw DimensionMismatch("jet_mul_trunc operand order too small");
  Jet out(a.base, a.rows, b.cols, m);
  for (int j = 0; j <= m; ++j)
    for (int k = 0; k <= j; ++k)
      out.c[static_cast<size_t>(j)] +=
          a.c[static_cast<size_t>(k)] * b.c[static_cast<size_t>(j - k)];
  return out;
}

Jet jet_mul(const Jet& a, const Jet& b) {
  check_same_frame(a, b, "jet_mul");
  return jet_mul_trunc(a, b, a.order());
}

Jet jet_scale_arg(const Jet& a, const GaussRat& lambda) {
  if (a.base != JetBase::zero)
    throw UnsupportedOperation("jet_scale_arg requires a jet at 0");
  Jet out = a;
  GaussRat p(1);
  for (size_t j = 0; j < out.c.size(); ++j) {
    if (j > 0) p *= lambda;
    out.c[j] = out.c[j].scaled(p);
  }
  return out;
}

Jet jet_recip(const Jet& a, int m) {
  if (a.rows != 1 || a.cols != 1) throw DimensionMismatch("jet_recip needs a 1x1 jet");
  if (a.order() < m) throw DimensionMismatch("jet_recip operand order too small");
  const GaussRat& a0 = a.c[0].at(0, 0);
  if (a0.is_zero()) throw SingularSystem("jet_recip: constant term vanishes");
  Jet out(a.base, 1, 1, m);
  out.c[0].at(0, 0) = GaussRat(1) / a0;
  for (int j = 1; j <= m; ++j) {
    GaussRat s(0);
    for (int k = 1; k <= j; ++k)
      s += a.c[static_cast<size_t>(k)].at(0, 0) * out.c[static_cast<size_t>(j - k)].at(0, 0);
    out.c[static_cast<size_t>(j)].at(0, 0) = -s / a0;
  }
  return out;
}

std::pair<int, GaussRat> leading_degree(const Jet& f, int m) {
  if (f.rows != 1 || f.cols != 1) throw DimensionMismatch("leading_degree needs a 1x1 jet");
  if (f.order() < m) throw DimensionMismatch("leading_degree: jet order too small");
  for (int j = 0; j <= m; ++j) {
    const GaussRat& cj = f.c[static_cast<size_t>(j)].at(0, 0);
    if (!cj.is_zero()) return {j, cj / GaussRat::i_pow(j)};
  }
  return {m, GaussRat(0)};
}

Jet exp_jet(const Rat& s, int m) {
  Jet out(JetBase::zero, 1, 1, m);
  GaussRat w(1);
  for (int j = 0; j <= m; ++j) {
    if (j > 0) w *= GaussRat(Rat(0), s) / GaussRat(Rat(j));
    out.c[static_cast<size_t>(j)].at(0, 0) = w;
  }
  return out;
}

}  // namespace subdivlab
