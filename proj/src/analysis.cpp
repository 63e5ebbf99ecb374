#include "subdivlab/analysis.hpp"

#include <cmath>

#include "subdivlab/eigen.hpp"

namespace subdivlab {

QMat symbol_at_zero(const Mask& m) {
  QMat s(m.r, m.r);
  for (const QMat& mk : m.a.c) s += mk;
  return s;
}

bool symmetry_holds(const Mask& m) {
  if (!m.sym) return true;
  const Symmetry& sym = *m.sym;
  if (static_cast<int>(sym.signs.size()) != m.r) return false;
  Rat twoc = sym.center * 2;
  if (twoc.get_den() != 1) return false;
  long c2 = twoc.get_num().get_si();
  int lo = m.a.lo, hi = m.a.hi();
  for (int k = std::min<long>(lo, c2 - hi); k <= std::max<long>(hi, c2 - lo); ++k) {
    QMat lhs = m.a.get(static_cast<int>(c2 - k));
    QMat rhs = m.a.get(static_cast<int>(k));
    for (int i = 0; i < m.r; ++i)
      for (int j = 0; j < m.r; ++j) {
        GaussRat want = rhs.at(i, j) * GaussRat(Rat(sym.signs[static_cast<size_t>(i)]) /
                                                Rat(sym.signs[static_cast<size_t>(j)]));
        if (lhs.at(i, j) != want) return false;
      }
  }
  return true;
}

namespace {

Rat binom(int n, int k) {
  Rat b(1);
  for (int t = 0; t < k; ++t) b = b * (n - t) / (t + 1);
  return b;
}

// D_d = sum_k a(k) (-ik)^d, optionally with the alternating sign of the
// symbol at pi.
std::vector<QMat> symbol_derivs(const Seq& a, JetBase base, int m) {
  Jet j = jet_of(a, base, m);
  std::vector<QMat> out;
  Rat f(1);
  for (int d = 0; d <= m; ++d) {
    if (d > 0) f *= d;
    out.push_back(j.c[static_cast<size_t>(d)].scaled(GaussRat(f)));
  }
  return out;
}

// Homogeneous system in the stacked filter derivatives v_0..v_{blocks-1}.
// Rows: for each j < blocks and each output column, the identity at 0
//   sum_k C(j,k) 2^k v_k A_{j-k} = v_j
// and, when include_pi, the identity at pi with right side 0.
QMat build_moment_system(const Mask& mask, int blocks, bool include_pi) {
  int r = mask.r;
  std::vector<QMat> A = symbol_derivs(mask.a, JetBase::zero, blocks - 1);
  std::vector<QMat> B;
  if (include_pi) B = symbol_derivs(mask.a, JetBase::pi, blocks - 1);
  int idents = include_pi ? 2 : 1;
  QMat sys(blocks * idents * r, blocks * r);
  int row = 0;
  for (int j = 0; j < blocks; ++j) {
    for (int ident = 0; ident < idents; ++ident) {
      const std::vector<QMat>& D = (ident == 0) ? A : B;
      for (int col = 0; col < r; ++col, ++row) {
        for (int k = 0; k <= j; ++k) {
          GaussRat w(binom(j, k) * Rat(mpz_class(1) << k));
          const QMat& Dk = D[static_cast<size_t>(j - k)];
          for (int i = 0; i < r; ++i) sys.at(row, k * r + i) += w * Dk.at(i, col);
        }
        if (ident == 0) sys.at(row, j * r + col) -= GaussRat(1);
      }
    }
  }
  return sys;
}

// First RREF-canonical nullspace vector whose order-0 block is nonzero,
// normalized so its first nonzero order-0 entry is 1.  Empty when none.
std::vector<GaussRat> filter_candidate(const QMat& sys, int r) {
  for (auto& v : nullspace(sys)) {
    int first = -1;
    for (int i = 0; i < r; ++i)
      if (!v[static_cast<size_t>(i)].is_zero()) {
        first = i;
        break;
      }
    if (first < 0) continue;
    GaussRat inv = GaussRat(1) / v[static_cast<size_t>(first)];
    for (GaussRat& x : v) x *= inv;
    return v;
  }
  return {};
}

FilterJet jets_from_derivatives(const std::vector<GaussRat>& v, int r, int blocks) {
  FilterJet f(JetBase::zero, 1, r, blocks - 1);
  Rat fac(1);
  for (int j = 0; j < blocks; ++j) {
    if (j > 0) fac *= j;
    for (int l = 0; l < r; ++l)
      f.c[static_cast<size_t>(j)].at(0, l) =
          v[static_cast<size_t>(j) * r + l] / GaussRat(fac);
  }
  return f;
}

}  // namespace

SpectralReport spectral_report(const Mask& mask, int m) {
  SpectralReport rep;
  rep.order = m;
  rep.eigenvalues = float_eigenvalues(to_float(symbol_at_zero(mask)));
  int near_one = 0;
  double mu = 0.0;
  bool pow2_hit = false;
  for (const auto& z : rep.eigenvalues) {
    if (std::abs(z - 1.0) < rep.gap_tol) {
      ++near_one;
      continue;
    }
    mu = std::max(mu, std::abs(z));
    for (int k = 1; k <= 62; ++k)
      if (std::abs(z - std::ldexp(1.0, k)) < rep.gap_tol) pow2_hit = true;
  }
  rep.one_is_simple = near_one == 1;
  rep.cond_a0 = rep.one_is_simple && !pow2_hit;
  if (mu == 0.0)
    rep.m_tilde = 1 << 20;  // only the unit eigenvalue: every order passes
  else
    rep.m_tilde = std::max(-1, static_cast<int>(std::ceil(-std::log2(mu) - 1e-9)) - 1);
  rep.cond_a_at_order = rep.one_is_simple && m <= rep.m_tilde;
  return rep;
}

std::vector<GaussRat> left_one_eigenvector(const Mask& mask) {
  QMat at = symbol_at_zero(mask).transpose();
  for (int i = 0; i < at.rows; ++i) at.at(i, i) -= GaussRat(1);
  auto basis = nullspace(at);
  if (basis.size() != 1)
    throw AmbiguousEigenvector(
        "eigenvalue 1 of the symbol at 0 has eigenspace dimension " +
        std::to_string(basis.size()));
  std::vector<GaussRat> v = basis[0];
  for (auto& x : v)
    if (!x.is_zero()) {
      GaussRat inv = GaussRat(1) / x;
      for (auto& y : v) y *= inv;
      break;
    }
  return v;
}

FilterJet matching_filter_moments(const Mask& mask, int m) {
  int r = mask.r;
  SpectralReport rep = spectral_report(mask, m);
  if (!rep.one_is_simple)
    throw AmbiguousEigenvector("eigenvalue 1 of the symbol at 0 is not simple");
  left_one_eigenvector(mask);  // exact simplicity check

  int blocks = m + 1;
  QMat sys0 = build_moment_system(mask, blocks, /*include_pi=*/false);
  std::vector<GaussRat> cand = filter_candidate(sys0, r);
  if (cand.empty()) {
    // Locate the first order whose extension is inconsistent.
    for (int mm = 0; mm <= m; ++mm) {
      QMat probe = build_moment_system(mask, mm + 1, false);
      if (filter_candidate(probe, r).empty())
        throw SingularSystem(
            "matching filter extension fails at order " + std::to_string(mm) +
            ": I - 2^j a^(0) is singular there and the moment system is inconsistent");
    }
    throw SingularSystem("matching filter moment system has no admissible solution");
  }
  size_t dim = nullspace(sys0).size();
  if (dim > 1) {
    // Singular-but-consistent extension: break the slack with the identity at
    // pi when a joint solution exists.
    QMat joint = build_moment_system(mask, blocks, /*include_pi=*/true);
    std::vector<GaussRat> tied = filter_candidate(joint, r);
    if (!tied.empty()) cand = tied;
  }
  return jets_from_derivatives(cand, r, blocks);
}

FilterCheck verify_matching_filter(const Mask& mask, const Jet& filter) {
  if (filter.rows != 1 || filter.cols != mask.r)
    throw DimensionMismatch("filter shape does not match the mask");
  int m = filter.order();
  Jet lhs = jet_mul(jet_scale_arg(filter, GaussRat(2)), jet_of(mask.a, JetBase::zero, m));
  FilterCheck out;
  for (int j = 0; j <= m; ++j)
    if (lhs.c[static_cast<size_t>(j)] != filter.c[static_cast<size_t>(j)]) {
      out.first_failure = j;
      return out;
    }
  out.ok = true;
  return out;
}

SumRules sum_rule_order(const Mask& mask, int cap) {
  SumRules best;
  for (int order = 1; order <= cap; ++order) {
    QMat sys = build_moment_system(mask, order, /*include_pi=*/true);
    std::vector<GaussRat> cand = filter_candidate(sys, mask.r);
    if (cand.empty()) break;
    best.order = order;
    best.filter = jets_from_derivatives(cand, mask.r, order);
  }
  return best;
}

namespace {

GaussRat entry(const Jet& f, int j, int l) { return f.c[static_cast<size_t>(j)].at(0, l); }

bool entry_equals_through(const Jet& f, int l, const Jet& target, int m) {
  for (int j = 0; j <= m; ++j)
    if (entry(f, j, l) != target.c[static_cast<size_t>(j)].at(0, 0)) return false;
  return true;
}

Jet entry_jet(const Jet& f, int l, int m) {
  Jet out(JetBase::zero, 1, 1, m);
  for (int j = 0; j <= m; ++j) out.c[static_cast<size_t>(j)].at(0, 0) = entry(f, j, l);
  return out;
}

bool matches_balanced(const Jet& f, int r, int m, bool* c_is_delta) {
  if (entry(f, 0, 0) != GaussRat(1)) return false;
  Jet c = entry_jet(f, 0, m);
  for (int l = 0; l < r; ++l) {
    Jet target = jet_mul(c, exp_jet(Rat(l, r), m));
    if (!entry_equals_through(f, l, target, m)) return false;
  }
  if (c_is_delta) {
    *c_is_delta = true;
    for (int j = 1; j <= m; ++j)
      if (!entry(f, j, 0).is_zero()) *c_is_delta = false;
  }
  return true;
}

bool matches_hermite(const Jet& f, int r, int m, bool* fast) {
  if (m < r - 1) return false;
  for (int l = 0; l < r; ++l) {
    for (int j = 0; j < l; ++j)
      if (!entry(f, j, l).is_zero()) return false;
    if (entry(f, l, l) != GaussRat::i_pow(l)) return false;
  }
  if (fast) {
    *fast = true;
    for (int l = 0; l < r; ++l)
      for (int j = l + 1; j <= m; ++j)
        if (!entry(f, j, l).is_zero()) *fast = false;
  }
  return true;
}

bool matches_scalar_type(const Jet& f, int r, int m, bool* fast) {
  if (entry(f, 0, 0) != GaussRat(1)) return false;
  for (int l = 1; l < r; ++l)
    for (int j = 0; j <= m; ++j)
      if (!entry(f, j, l).is_zero()) return false;
  if (fast) {
    *fast = true;
    for (int j = 1; j <= m; ++j)
      if (!entry(f, j, 0).is_zero()) *fast = false;
  }
  return true;
}

bool matches_lagrange(const Jet& f, int r, int m, bool* fast) {
  for (int l = 0; l < r; ++l)
    if (entry(f, 0, l) != GaussRat(1)) return false;
  if (fast) {
    *fast = true;
    for (int l = 0; l < r; ++l)
      for (int j = 1; j <= m; ++j)
        if (!entry(f, j, l).is_zero()) *fast = false;
  }
  return true;
}

}  // namespace

bool matches_generalized_hermite(const Jet& filter, const std::vector<int>& nu, int m) {
  int r = filter.cols;
  if (static_cast<int>(nu.size()) != r) return false;
  if (filter.order() < m) throw DimensionMismatch("filter order below classification order");
  if (nu[0] != 0) return false;
  for (int l = 0; l < r; ++l) {
    if (nu[static_cast<size_t>(l)] < 0 || nu[static_cast<size_t>(l)] > m) return false;
    for (int j = 0; j < nu[static_cast<size_t>(l)]; ++j)
      if (!entry(filter, j, l).is_zero()) return false;
    if (entry(filter, nu[static_cast<size_t>(l)], l) !=
        GaussRat::i_pow(nu[static_cast<size_t>(l)]))
      return false;
  }
  return true;
}

std::vector<SchemeClass> classify_all(const Jet& filter, int r, int m) {
  if (filter.rows != 1 || filter.cols != r) throw DimensionMismatch("classify: filter shape");
  if (filter.order() < m) throw DimensionMismatch("classify: filter order below requested order");
  std::vector<SchemeClass> out;
  bool c_delta = false;
  if (matches_balanced(filter, r, m, &c_delta)) {
    SchemeClass s;
    s.tag = "balanced";
    s.order = m;
    s.fast = true;
    s.c_is_delta = c_delta;
    out.push_back(s);
  }
  bool fast = false;
  if (matches_hermite(filter, r, m, &fast)) {
    SchemeClass s;
    s.tag = "hermite";
    s.order = m;
    s.fast = fast;
    out.push_back(s);
  }
  {
    // Leading exponents, when every entry has one within reach.
    std::vector<int> nu;
    bool have = true;
    for (int l = 0; l < r && have; ++l) {
      int lead = -1;
      for (int j = 0; j <= m; ++j)
        if (!entry(filter, j, l).is_zero()) {
          lead = j;
          break;
        }
      if (lead < 0)
        have = false;
      else
        nu.push_back(lead);
    }
    int numax = 0;
    for (size_t t = 0; t < nu.size(); ++t) numax = std::max(numax, nu[t]);
    if (have && numax > 0 && matches_generalized_hermite(filter, nu, m)) {
      SchemeClass s;
      s.tag = "generalized-hermite";
      s.order = m;
      s.nu = nu;
      s.fast = true;
      for (int l = 0; l < r; ++l)
        for (int j = nu[static_cast<size_t>(l)] + 1; j <= m; ++j)
          if (!entry(filter, j, l).is_zero()) s.fast = false;
      out.push_back(s);
    }
  }
  if (matches_scalar_type(filter, r, m, &fast)) {
    SchemeClass s;
    s.tag = "scalar-type";
    s.order = m;
    s.fast = fast;
    out.push_back(s);
  }
  if (matches_lagrange(filter, r, m, &fast)) {
    SchemeClass s;
    s.tag = "lagrange";
    s.order = m;
    s.fast = fast;
    out.push_back(s);
  }
  return out;
}

SchemeClass classify_scheme(const Jet& filter, int r, int m) {
  std::vector<SchemeClass> all = classify_all(filter, r, m);
  if (!all.empty()) return all[0];
  SchemeClass s;
  s.tag = "unclassified";
  s.order = m;
  return s;
}

Mask MaskFamily::member(const std::vector<GaussRat>& coeffs) const {
  if (coeffs.size() != basis.size())
    throw DimensionMismatch("family member needs one coefficient per basis direction");
  std::vector<GaussRat> flat = particular;
  for (size_t b = 0; b < basis.size(); ++b)
    for (size_t t = 0; t < flat.size(); ++t) flat[t] += coeffs[b] * basis[b][t];
  Mask m;
  m.r = r;
  m.a = Seq(r, r, lo, hi);
  for (int k = lo; k <= hi; ++k)
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        m.a.ref(k).at(i, j) = flat[static_cast<size_t>(((k - lo) * r + i)) * r + j];
  m.a.trim();
  return m;
}

bool MaskFamily::contains(const Mask& m) const {
  if (m.r != r) return false;
  Seq a = m.a;
  a.trim();
  if (!a.empty() && (a.lo < lo || a.hi() > hi)) return false;
  size_t n = particular.size();
  std::vector<GaussRat> diff(n);
  for (int k = lo; k <= hi; ++k) {
    QMat mk = a.get(k);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        diff[static_cast<size_t>(((k - lo) * r + i)) * r + j] =
            mk.at(i, j) - particular[static_cast<size_t>(((k - lo) * r + i)) * r + j];
  }
  QMat cols(static_cast<int>(n), static_cast<int>(basis.size()));
  for (size_t b = 0; b < basis.size(); ++b)
    for (size_t t = 0; t < n; ++t) cols.at(static_cast<int>(t), static_cast<int>(b)) = basis[b][t];
  return solve_affine(cols, diff).has_value();
}

MaskFamily design_mask(int lo, int hi, int r, const std::optional<Symmetry>& sym,
                       int m_a, const Jet& filter) {
  if (hi < lo) throw DimensionMismatch("design support window is empty");
  if (filter.rows != 1 || filter.cols != r)
    throw DimensionMismatch("design filter shape does not match r");
  if (filter.order() < m_a - 1)
    throw DimensionMismatch("design filter must carry jets through order m_a - 1");
  int n = (hi - lo + 1) * r * r;
  auto idx = [&](int k, int i, int j) { return ((k - lo) * r + i) * r + j; };

  // Known filter derivatives v_j = j! c_j.
  std::vector<std::vector<GaussRat>> v(static_cast<size_t>(m_a));
  Rat fac(1);
  for (int j = 0; j < m_a; ++j) {
    if (j > 0) fac *= j;
    for (int l = 0; l < r; ++l)
      v[static_cast<size_t>(j)].push_back(filter.c[static_cast<size_t>(j)].at(0, l) *
                                          GaussRat(fac));
  }

  std::vector<std::vector<GaussRat>> rows;
  std::vector<GaussRat> rhs;
  for (int j = 0; j < m_a; ++j) {
    for (int ident = 0; ident < 2; ++ident) {
      for (int col = 0; col < r; ++col) {
        std::vector<GaussRat> row(static_cast<size_t>(n), GaussRat(0));
        for (int k = 0; k <= j; ++k) {
          GaussRat w(binom(j, k) * Rat(mpz_class(1) << k));
          int d = j - k;
          for (int kk = lo; kk <= hi; ++kk) {
            GaussRat kpow = GaussRat(Rat(0), Rat(-kk)).pow(d);
            if (ident == 1 && (kk % 2 != 0)) kpow = -kpow;
            for (int i = 0; i < r; ++i)
              row[static_cast<size_t>(idx(kk, i, col))] +=
                  w * v[static_cast<size_t>(k)][static_cast<size_t>(i)] * kpow;
          }
        }
        rows.push_back(std::move(row));
        rhs.push_back(ident == 0 ? v[static_cast<size_t>(j)][static_cast<size_t>(col)]
                                 : GaussRat(0));
      }
    }
  }
  if (sym) {
    if (static_cast<int>(sym->signs.size()) != r)
      throw DimensionMismatch("symmetry sign list must have length r");
    Rat twoc = sym->center * 2;
    if (twoc.get_den() != 1)
      throw ParseError("symmetry center must be a half-integer");
    long c2 = twoc.get_num().get_si();
    for (int k = lo; k <= hi; ++k) {
      long mk = c2 - k;
      for (int i = 0; i < r; ++i)
        for (int j2 = 0; j2 < r; ++j2) {
          std::vector<GaussRat> row(static_cast<size_t>(n), GaussRat(0));
          GaussRat ratio(Rat(sym->signs[static_cast<size_t>(i)]) /
                         Rat(sym->signs[static_cast<size_t>(j2)]));
          row[static_cast<size_t>(idx(k, i, j2))] -= ratio;
          if (mk >= lo && mk <= hi)
            row[static_cast<size_t>(idx(static_cast<int>(mk), i, j2))] += GaussRat(1);
          rows.push_back(std::move(row));
          rhs.push_back(GaussRat(0));
        }
    }
  }

  QMat A(static_cast<int>(rows.size()), n);
  for (size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < n; ++j) A.at(static_cast<int>(i), j) = rows[i][static_cast<size_t>(j)];
  auto sol = solve_affine(A, rhs);
  if (!sol)
    throw InfeasibleSystem("no mask on the requested support satisfies the design constraints");
  MaskFamily fam;
  fam.r = r;
  fam.lo = lo;
  fam.hi = hi;
  fam.particular = sol->first;
  fam.basis = sol->second;
  return fam;
}

}  // namespace subdivlab
