#include <doctest.h>

#include <cmath>

#include "subdivlab/corpus.hpp"
#include "subdivlab/normal_form.hpp"
#include "subdivlab/smoothness.hpp"
#include "test_util.hpp"

using namespace subdivlab;
using namespace testutil;

namespace {

// Two decoupled channels: the quartic spline mask and a 1/16 point mass.
Mask diag_pair() {
  Mask b4 = bspline4();
  std::vector<QMat> mats;
  for (int k = -2; k <= 2; ++k) {
    QMat m(2, 2);
    m.at(0, 0) = b4.a.get(k).at(0, 0);
    if (k == 0) m.at(1, 1) = GaussRat(rat(1, 16));
    mats.push_back(m);
  }
  Mask out;
  out.r = 2;
  out.a = seq_from(-2, mats);
  return out;
}

bool reduces_to_unit_row(const Jet& filter, const Seq& u, int m) {
  Jet prod = jet_mul_trunc(filter, jet_of(u, JetBase::zero, m), m);
  for (int d = 0; d <= m; ++d)
    for (int l = 0; l < prod.cols; ++l) {
      GaussRat want = (d == 0 && l == 0) ? GaussRat(1) : GaussRat(0);
      if (prod.c[static_cast<size_t>(d)].at(0, l) != want) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("U1 is unimodular and normalizes every stored filter") {
  for (const char* id : {"ex1", "ex2a1", "ex2a2", "ex3", "ex4"}) {
    CAPTURE(id);
    auto ex = load_example(id);
    REQUIRE(ex.mask.filter.has_value());
    const Jet& f = *ex.mask.filter;
    U1Result res = build_U1(f, f.order());
    CHECK(seq_det(res.u) == sseq(0, {"1"}));
    CHECK(reduces_to_unit_row(f, res.u, f.order()));
  }
}

TEST_CASE("one-channel normal forms stop at order zero") {
  Jet f(JetBase::zero, 1, 1, 1);
  f.c[0].at(0, 0) = GaussRat(1);
  U1Result res = build_U1(f, 0);
  CHECK(res.u.rows == 1);
  CHECK(res.u.get(0).at(0, 0) == GaussRat(1));
  CHECK_THROWS_AS(build_U1(f, 1), UnsupportedOperation);
}

TEST_CASE("strongly invertible inverse round-trips") {
  auto ex = load_example("ex3");
  Jet f = jet_truncate(*ex.mask.filter, 3);
  Seq u = build_U1(f, 3).u;
  Seq uinv = strongly_invertible_inverse(u);
  CHECK(seq_conv(u, uinv) == delta_id(2));
  CHECK(seq_conv(uinv, u) == delta_id(2));
}

TEST_CASE("realize_on_window reproduces the jet on {0..m}") {
  Seq src = sseq(-1, {"1/3", "2", "-1/2"});
  Jet j0 = jet_of(src, JetBase::zero, 2);
  Seq s = realize_on_window(j0, 2);
  CHECK(s.lo >= 0);
  CHECK(s.hi() <= 2);
  CHECK(jet_of(s, JetBase::zero, 2) == j0);
}

TEST_CASE("similarity transform carries filters and spectra along") {
  Mask src = diag_pair();
  SumRules sr = sum_rule_order(src);
  REQUIRE(sr.order == 4);

  // Target filter [1, i xi] through order 2.
  Jet target(JetBase::zero, 1, 2, 2);
  target.c[0].at(0, 0) = GaussRat(1);
  target.c[1].at(0, 1) = GaussRat(Rat(0), Rat(1));

  Seq u1s = build_U1(jet_truncate(sr.filter, 2), 2).u;
  Seq u1t = build_U1(target, 2).u;
  Seq U = seq_conv(u1t, strongly_invertible_inverse(u1s));
  Seq Uinv = seq_conv(u1s, strongly_invertible_inverse(u1t));
  REQUIRE(seq_conv(U, Uinv) == delta_id(2));

  Mask moved = similarity_transform(src, U, Uinv);
  CHECK(verify_matching_filter(moved, target).ok);
  CHECK(sum_rule_order(moved).order == 4);

  // The restricted radius over V_1 survives the change of generators.
  auto basis_of = [](const Mask& m, const Jet& filter) {
    Jet f1 = jet_truncate(filter, 1);
    return generator_basis(f1, 2, build_U1(f1, 1).u);
  };
  double rho_src = rho_estimate(src, basis_of(src, sr.filter), 2, 12).rho;
  double rho_mov =
      rho_estimate(moved, basis_of(moved, sum_rule_order(moved).filter), 2, 12).rho;
  CHECK(std::abs(std::log2(rho_src) - std::log2(rho_mov)) < 0.02);
  CHECK(std::abs(std::log2(rho_src) + 1.5) < 0.05);
}
