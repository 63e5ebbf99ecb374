#include <doctest.h>

#include <random>

#include "subdivlab/corpus.hpp"
#include "subdivlab/engine.hpp"
#include "test_util.hpp"

using namespace subdivlab;
using namespace testutil;

TEST_CASE("haar refinement of the delta is the all-ones block") {
  Seq w = iterate(haar(), delta_id(1), 3);
  CHECK(w.lo == 0);
  CHECK(w.hi() == 7);
  for (int k = 0; k <= 7; ++k) CHECK(w.get(k).at(0, 0) == GaussRat(1));
}

TEST_CASE("subdivide_step matches its defining sum on random data") {
  auto ex = load_example("ex1");
  std::mt19937 rng(20260818u);
  for (int rep = 0; rep < 4; ++rep) {
    Seq w = random_seq(rng, 1, 2, -2, 4);
    Seq out = subdivide_step(ex.mask, w);
    int lo = 2 * w.lo + ex.mask.a.lo;
    int hi = 2 * w.hi() + ex.mask.a.hi();
    for (int j = lo; j <= hi; ++j) {
      QMat sum(1, 2);
      for (int k = w.lo; k <= w.hi(); ++k) {
        int kk = j - 2 * k;
        if (!ex.mask.a.in_support(kk)) continue;
        sum += (w.get(k) * ex.mask.a.get(kk)).scaled(GaussRat(2));
      }
      CHECK(out.get(j) == sum);
    }
  }
}

TEST_CASE("dyadic grids nest exactly") {
  auto ex = load_example("ex1");
  const Jet& f = *ex.mask.filter;
  DyadicSamples d2 = dyadic_values(ex.mask, f, 0, 2);
  DyadicSamples d3 = dyadic_values(ex.mask, f, 0, 3);
  for (size_t k = 0; k < d2.values.size(); ++k) {
    int m = 2 * (d2.lo + static_cast<int>(k)) - d3.lo;
    REQUIRE(m >= 0);
    REQUIRE(m < static_cast<int>(d3.values.size()));
    CHECK(d2.values[k] == d3.values[static_cast<size_t>(m)]);
  }
}

TEST_CASE("integer samples are transition eigenvectors") {
  auto ex1 = load_example("ex1");
  Seq u0 = phi_integer_samples(ex1.mask, *ex1.mask.filter, 0);
  CHECK(u0 == vseq(0, {{"1/3", "2/3"}}));
  CHECK(transition_step(ex1.mask, u0) == u0);

  auto ex3 = load_example("ex3");
  Seq u1 = phi_integer_samples(ex3.mask, *ex3.mask.filter, 1);
  CHECK(transition_step(ex3.mask, u1) == seq_scale(u1, GaussRat(rat(1, 2))));
}

TEST_CASE("the hat identity holds on the dyadic grid") {
  auto ex = load_example("ex1");
  DyadicSamples ds = dyadic_values(ex.mask, *ex.mask.filter, 0, 3);
  CHECK(ds.lo == -8);
  CHECK(ds.values.size() == 17);
  for (size_t k = 0; k < ds.values.size(); ++k) {
    long num = ds.lo + static_cast<long>(k);
    Rat hat = num >= 0 ? rat(8 - num, 8) : rat(8 + num, 8);
    if (hat < 0) hat = 0;
    GaussRat sum = ds.values[k][0] + ds.values[k][1];
    CHECK(sum == GaussRat(hat));
  }
}

TEST_CASE("limit samples of the identity data reproduce the basis") {
  auto ex = load_example("ex1");
  const Jet& f = *ex.mask.filter;
  DyadicSamples direct = dyadic_values(ex.mask, f, 0, 3);
  DyadicSamples viaw0 = limit_function_samples(ex.mask, f, delta_id(2), 0, 3);
  CHECK(viaw0.lo == direct.lo);
  CHECK(viaw0.rows == direct.rows);
  REQUIRE(viaw0.values.size() == direct.values.size());
  CHECK(viaw0.values == direct.values);

  DyadicSamples clipped = limit_function_samples(ex.mask, f, delta_id(2), 0, 3, rat(1, 2));
  CHECK(clipped.lo == -4);
  REQUIRE(clipped.values.size() == 9);
  for (size_t k = 0; k < clipped.values.size(); ++k)
    CHECK(clipped.values[k] == direct.values[k + 4]);
}

TEST_CASE("the level guard is enforced") {
  auto ex = load_example("ex1");
  CHECK_THROWS_AS(iterate(ex.mask, delta_id(2), max_level_guard() + 1), ResourceLimit);
}

TEST_CASE("a tied transition eigenvalue is refused, not broken silently") {
  auto ex = load_example("ex1");
  // The transition spectrum carries 1/2 twice.
  CHECK_THROWS_AS(phi_integer_samples(ex.mask, *ex.mask.filter, 1), AmbiguousEigenvector);
}

TEST_CASE("transition matrix blocks follow the position-major layout") {
  auto ex = load_example("ex1");
  Transition t = transition_matrix(ex.mask);
  CHECK(t.lo == -1);
  CHECK(t.hi == 1);
  CHECK(t.r == 2);
  REQUIRE(t.M.rows == 6);
  REQUIRE(t.M.cols == 6);
  for (int p = t.lo; p <= t.hi; ++p)
    for (int q = t.lo; q <= t.hi; ++q)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          int k = 2 * p - q;
          GaussRat want = ex.mask.a.in_support(k)
                              ? ex.mask.a.get(k).at(i, j) * GaussRat(2)
                              : GaussRat(0);
          CHECK(t.M.at((p - t.lo) * 2 + i, (q - t.lo) * 2 + j) == want);
        }
}
