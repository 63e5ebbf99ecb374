#include <doctest.h>

#include <cmath>

#include "subdivlab/corpus.hpp"
#include "subdivlab/smoothness.hpp"
#include "test_util.hpp"

using namespace subdivlab;
using namespace testutil;

namespace {

GeneratorBasis basis_at(const Jet& filter, int j) {
  Jet f = jet_truncate(filter, j - 1);
  return generator_basis(f, j, build_U1(f, j - 1).u);
}

}  // namespace

TEST_CASE("log2q handles tiny and huge rationals") {
  CHECK(std::abs(log2q(rat(3, 4)) - std::log2(0.75)) < 1e-12);
  mpz_class big = mpz_class(1) << 2000;
  CHECK(std::abs(log2q(Rat(big)) - 2000.0) < 1e-9);
  CHECK(std::abs(log2q(Rat(1) / Rat(big)) + 2000.0) < 1e-9);
}

TEST_CASE("haar sits at the L2 smoothness baseline") {
  SmoothnessReport rep = sm_report(haar(), 12);
  CHECK(rep.sr == 1);
  CHECK(std::abs(rep.sm2 - 0.5) < 0.05);
  CHECK(rep.sminf_lo == doctest::Approx(rep.sm2 - 0.5));
  CHECK(rep.sminf_hi == doctest::Approx(rep.sm2));
}

TEST_CASE("the quartic spline mask lands at sm2 = 3.5") {
  SmoothnessReport rep = sm_report(bspline4(), 14);
  CHECK(rep.sr == 4);
  CHECK(std::abs(rep.sm2 - 3.5) < 0.05);
  CHECK(std::abs(std::log2(rep.rho2.rho) + 3.0) < 0.05);
}

TEST_CASE("two-channel hat mask smoothness and its derivative ladder") {
  auto ex = load_example("ex1");
  SmoothnessReport rep = sm_report(ex.mask, 14);
  CHECK(rep.sr == 4);
  CHECK(std::abs(rep.sm2 - 1.5) < 0.05);
  CHECK(std::abs(std::log2(rep.rho2.rho) + 1.0) < 0.05);

  // Below the top order the radius follows max(2^{1/2 - j}, rho_sr).
  const Jet& f = *ex.mask.filter;
  const double expected[] = {-0.5, -1.0, -1.0};
  for (int j = 1; j <= 3; ++j) {
    CAPTURE(j);
    double rho = rho_estimate(ex.mask, basis_at(f, j), 2, 12).rho;
    CHECK(std::abs(std::log2(rho) - expected[j - 1]) < 0.05);
  }
}

TEST_CASE("rho is blind to filter rescaling") {
  auto ex = load_example("ex1");
  const Jet& f = *ex.mask.filter;
  GeneratorBasis plain = generator_basis(f, 4, build_U1(f, 3).u);
  double base = std::log2(rho_estimate(ex.mask, plain, 2, 10).rho);
  for (const char* cs : {"3/2", "-2"}) {
    CAPTURE(cs);
    Jet scaled = jet_scale(f, Q(cs));
    GeneratorBasis b = generator_basis(scaled, 4, build_U1(scaled, 3).u);
    double got = std::log2(rho_estimate(ex.mask, b, 2, 10).rho);
    CHECK(std::abs(got - base) <= 1e-3);
  }
}

TEST_CASE("generator members carry no filter moments below the order") {
  for (const char* id : {"ex1", "ex3"}) {
    CAPTURE(id);
    auto ex = load_example(id);
    const Jet& f = *ex.mask.filter;
    int sr = sum_rule_order(ex.mask).order;
    REQUIRE(f.order() == sr - 1);
    GeneratorBasis basis = generator_basis(f, sr, build_U1(f, sr - 1).u);
    for (const Seq& u : basis.members) {
      Jet prod = jet_mul_trunc(f, jet_of(u, JetBase::zero, sr - 1), sr - 1);
      for (int d = 0; d <= sr - 1; ++d) CHECK(prod.c[static_cast<size_t>(d)].is_zero());
    }
  }
}
