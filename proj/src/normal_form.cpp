#include "subdivlab/normal_form.hpp"

#include "subdivlab/linalg.hpp"

namespace subdivlab {

Seq realize_on_window(const Jet& jet, int m) {
  if (jet.rows != 1 || jet.cols != 1)
    throw DimensionMismatch("realize_on_window needs a scalar jet");
  if (jet.order() < m) throw DimensionMismatch("realize_on_window: jet order too small");
  // sum_k u(k) (-ik)^d = d! c_d for d = 0..m, unknowns u(0..m).
  QMat V(m + 1, m + 1);
  std::vector<GaussRat> rhs(static_cast<size_t>(m) + 1);
  Rat fac(1);
  for (int d = 0; d <= m; ++d) {
    if (d > 0) fac *= d;
    for (int k = 0; k <= m; ++k) V.at(d, k) = GaussRat(Rat(0), Rat(-k)).pow(d);
    rhs[static_cast<size_t>(d)] = jet.c[static_cast<size_t>(d)].at(0, 0) * GaussRat(fac);
  }
  auto sol = solve_affine(V, rhs);
  if (!sol) throw SingularSystem("moment interpolation system is inconsistent");
  Seq u(1, 1, 0, m);
  for (int k = 0; k <= m; ++k) u.ref(k).at(0, 0) = sol->first[static_cast<size_t>(k)];
  u.trim();
  return u;
}

namespace {

Jet entry_jet(const Jet& f, int l, int m) {
  Jet out(JetBase::zero, 1, 1, m);
  for (int j = 0; j <= m; ++j) out.c[static_cast<size_t>(j)].at(0, 0) = f.c[static_cast<size_t>(j)].at(0, l);
  return out;
}

GaussRat coeff_sum(const Seq& u) {
  GaussRat s(0);
  for (const QMat& m : u.c) s += m.at(0, 0);
  return s;
}

// Scalar (i, j) entry as a 1x1 sequence.
Seq scalar_entry(const Seq& u, int i, int j) {
  Seq out(1, 1);
  if (u.empty()) return out;
  out = Seq(1, 1, u.lo, u.hi());
  for (int k = u.lo; k <= u.hi(); ++k) out.ref(k).at(0, 0) = u.ref(k).at(i, j);
  out.trim();
  return out;
}

Seq scalar_delta() {
  Seq d(1, 1, 0, 0);
  d.ref(0).at(0, 0) = GaussRat(1);
  return d;
}

// Assemble an r x r sequence from scalar entry sequences.
Seq assemble(const std::vector<std::vector<Seq>>& ent) {
  int r = static_cast<int>(ent.size());
  int lo = 0, hi = 0;
  bool any = false;
  for (const auto& row : ent)
    for (const Seq& e : row) {
      if (e.empty()) continue;
      if (!any) {
        lo = e.lo;
        hi = e.hi();
        any = true;
      } else {
        lo = std::min(lo, e.lo);
        hi = std::max(hi, e.hi());
      }
    }
  if (!any) return Seq(r, r);
  Seq out(r, r, lo, hi);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      const Seq& e = ent[static_cast<size_t>(i)][static_cast<size_t>(j)];
      for (int k = e.lo; e.in_support(k); ++k) out.ref(k).at(i, j) = e.ref(k).at(0, 0);
    }
  out.trim();
  return out;
}

Rat binom_int(int n, int k) {
  Rat b(1);
  for (int t = 0; t < k; ++t) b = b * (n - t) / (t + 1);
  return b;
}

Seq det_minor(const std::vector<std::vector<Seq>>& ent, std::vector<int> rows,
              std::vector<int> cols);

Seq det_entries(const std::vector<std::vector<Seq>>& ent) {
  std::vector<int> all;
  for (size_t i = 0; i < ent.size(); ++i) all.push_back(static_cast<int>(i));
  return det_minor(ent, all, all);
}

Seq det_minor(const std::vector<std::vector<Seq>>& ent, std::vector<int> rows,
              std::vector<int> cols) {
  if (rows.size() == 1)
    return ent[static_cast<size_t>(rows[0])][static_cast<size_t>(cols[0])];
  Seq acc(1, 1);
  for (size_t t = 0; t < rows.size(); ++t) {
    const Seq& pivot = ent[static_cast<size_t>(rows[t])][static_cast<size_t>(cols[0])];
    if (pivot.empty()) continue;
    std::vector<int> sub_rows;
    for (size_t s = 0; s < rows.size(); ++s)
      if (s != t) sub_rows.push_back(rows[s]);
    std::vector<int> sub_cols(cols.begin() + 1, cols.end());
    Seq term = seq_conv(pivot, det_minor(ent, sub_rows, sub_cols));
    if (t % 2 == 1) term = seq_scale(term, GaussRat(-1));
    acc = seq_add(acc, term);
  }
  return acc;
}

std::vector<std::vector<Seq>> to_entries(const Seq& u) {
  int r = u.rows;
  std::vector<std::vector<Seq>> ent(static_cast<size_t>(r),
                                    std::vector<Seq>(static_cast<size_t>(r), Seq(1, 1)));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) ent[static_cast<size_t>(i)][static_cast<size_t>(j)] = scalar_entry(u, i, j);
  return ent;
}

}  // namespace

U1Result build_U1(const Jet& filter, int m) {
  int r = filter.cols;
  if (filter.rows != 1) throw DimensionMismatch("build_U1 needs a 1 x r filter jet");
  if (filter.order() < m) throw DimensionMismatch("build_U1: filter order below m");

  // Permute entries so the leading one is nonzero at 0.
  std::vector<int> perm;
  for (int l = 0; l < r; ++l) perm.push_back(l);
  if (filter.c[0].at(0, 0).is_zero()) {
    int swap = -1;
    for (int l = 1; l < r; ++l)
      if (!filter.c[0].at(0, l).is_zero()) {
        swap = l;
        break;
      }
    if (swap < 0)
      throw NormalizationFailure("filter vanishes at 0; no entry can lead the normal form");
    std::swap(perm[0], perm[static_cast<size_t>(swap)]);
  }
  Jet f(JetBase::zero, 1, r, filter.order());
  for (int j = 0; j <= filter.order(); ++j)
    for (int l = 0; l < r; ++l)
      f.c[static_cast<size_t>(j)].at(0, l) = filter.c[static_cast<size_t>(j)].at(0, perm[static_cast<size_t>(l)]);

  Jet u1j = jet_recip(entry_jet(f, 0, m), m);
  std::vector<Seq> useq;
  useq.push_back(realize_on_window(u1j, m));
  for (int l = 1; l < r; ++l)
    useq.push_back(realize_on_window(jet_mul_trunc(entry_jet(f, l, m), u1j, m), m));

  if (r == 1) {
    if (m > 0)
      throw UnsupportedOperation(
          "strongly invertible normal form over one channel exists only at order 0");
    U1Result res;
    res.u = Seq(1, 1, 0, 0);
    res.u.ref(0).at(0, 0) = u1j.c[0].at(0, 0);
    res.perm = perm;
    return res;
  }

  // g with symbol 1/s (1 - (1 - s/c)^{m+1}) = filter_1 + O(xi^{m+1}),
  // where s is the symbol of useq[0] and c = s(0).
  GaussRat c0 = coeff_sum(useq[0]);
  if (c0.is_zero()) throw NormalizationFailure("realized leading sequence sums to zero");
  Seq g(1, 1);
  Seq power = scalar_delta();  // useq[0]^{k-1}
  GaussRat cpow(1);
  for (int k = 1; k <= m + 1; ++k) {
    cpow /= c0;
    GaussRat w = GaussRat(binom_int(m + 1, k)) * cpow;
    if (k % 2 == 0) w = -w;
    g = seq_add(g, seq_scale(power, w));
    if (k <= m) power = seq_conv(power, useq[0]);
  }

  Seq s12 = seq_add(useq[0], useq[1]);
  std::vector<std::vector<Seq>> ent(static_cast<size_t>(r),
                                    std::vector<Seq>(static_cast<size_t>(r), Seq(1, 1)));
  ent[0][0] = s12;
  ent[0][1] = seq_sub(scalar_delta(), seq_conv(s12, g));
  ent[1][0] = seq_scale(scalar_delta(), GaussRat(-1));
  ent[1][1] = g;
  for (int l = 2; l < r; ++l) {
    ent[0][static_cast<size_t>(l)] = seq_scale(useq[static_cast<size_t>(l)], GaussRat(-1));
    ent[static_cast<size_t>(l)][static_cast<size_t>(l)] = scalar_delta();
  }
  Seq u = assemble(ent);

  // Undo the permutation on the rows: U = P U'.
  if (perm[0] != 0) {
    Seq p(r, r, 0, 0);
    for (int l = 0; l < r; ++l) p.ref(0).at(perm[static_cast<size_t>(l)], l) = GaussRat(1);
    u = seq_conv(p, u);
  }
  U1Result res;
  res.u = u;
  res.perm = perm;
  return res;
}

Seq seq_det(const Seq& u) {
  if (u.rows != u.cols) throw DimensionMismatch("seq_det of a non-square sequence");
  if (u.empty()) return Seq(1, 1);
  return det_entries(to_entries(u));
}

Seq strongly_invertible_inverse(const Seq& u) {
  if (u.rows != u.cols) throw DimensionMismatch("inverse of a non-square sequence");
  int r = u.rows;
  Seq d = seq_det(u);
  d.trim();
  if (d.empty()) throw SingularSystem("sequence determinant vanishes");
  if (d.c.size() != 1)
    throw UnsupportedOperation(
        "sequence determinant is not a monomial; no inverse with finite support");
  GaussRat c = d.ref(d.lo).at(0, 0);
  int shift = d.lo;
  auto ent = to_entries(u);
  std::vector<std::vector<Seq>> inv(static_cast<size_t>(r),
                                    std::vector<Seq>(static_cast<size_t>(r), Seq(1, 1)));
  std::vector<int> all;
  for (int i = 0; i < r; ++i) all.push_back(i);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      if (r == 1) {
        inv[0][0] = scalar_delta();
        break;
      }
      std::vector<int> rows, cols;
      for (int t = 0; t < r; ++t) {
        if (t != j) rows.push_back(t);  // adjugate: minor of the transposed position
        if (t != i) cols.push_back(t);
      }
      Seq mr = det_minor(ent, rows, cols);
      if ((i + j) % 2 == 1) mr = seq_scale(mr, GaussRat(-1));
      inv[static_cast<size_t>(i)][static_cast<size_t>(j)] = mr;
    }
  Seq adj = assemble(inv);
  adj = seq_scale(adj, GaussRat(1) / c);
  adj = seq_shift(adj, -shift);
  return adj;
}

Mask similarity_transform(const Mask& mask, const Seq& U, const Seq& Uinv) {
  if (U.rows != mask.r || U.cols != mask.r || Uinv.rows != mask.r || Uinv.cols != mask.r)
    throw DimensionMismatch("similarity transform shape mismatch");
  Mask out;
  out.r = mask.r;
  out.a = seq_conv(seq_conv(upsample(U, 2), mask.a), Uinv);
  return out;
}

}  // namespace subdivlab
