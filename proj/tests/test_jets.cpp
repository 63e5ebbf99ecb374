#include <doctest.h>

#include "test_util.hpp"

using namespace subdivlab;
using namespace testutil;

TEST_CASE("jet of a convolution is the truncated Cauchy product") {
  std::mt19937 rng(101u);
  Seq u = random_seq(rng, 2, 2, -2, 4);
  Seq v = random_seq(rng, 2, 1, -1, 3);
  for (int m : {0, 1, 3, 5}) {
    Jet ju = jet_of(u, JetBase::zero, m);
    Jet jv = jet_of(v, JetBase::zero, m);
    CHECK(jet_mul_trunc(ju, jv, m) == jet_of(seq_conv(u, v), JetBase::zero, m));
  }
}

TEST_CASE("argument doubling matches upsampling") {
  std::mt19937 rng(102u);
  Seq u = random_seq(rng, 2, 2, -2, 4);
  CHECK(jet_scale_arg(jet_of(u, JetBase::zero, 4), GaussRat(2)) ==
        jet_of(upsample(u, 2), JetBase::zero, 4));
}

TEST_CASE("reciprocal jets invert") {
  Seq u = sseq(-1, {"1/3", "2", "-1/2"});
  Jet f = jet_of(u, JetBase::zero, 5);
  Jet g = jet_recip(f, 5);
  Jet one = jet_mul_trunc(f, g, 5);
  CHECK(one.c[0].at(0, 0) == GaussRat(1));
  for (int j = 1; j <= 5; ++j) CHECK(one.c[static_cast<size_t>(j)].is_zero());
}

TEST_CASE("leading degree and beta") {
  Jet f(JetBase::zero, 1, 1, 3);
  f.c[1].at(0, 0) = GaussRat(Rat(0), Rat(3));  // 3i xi
  f.c[3].at(0, 0) = GaussRat(5);
  auto [j, beta] = leading_degree(f, 3);
  CHECK(j == 1);
  CHECK(beta == GaussRat(3));

  Jet z(JetBase::zero, 1, 1, 4);
  auto [jz, bz] = leading_degree(z, 4);
  CHECK(jz == 4);
  CHECK(bz == GaussRat(0));
}

TEST_CASE("exponential jets") {
  Jet e = exp_jet(rat(1, 2), 4);
  CHECK(e.c[0].at(0, 0) == GaussRat(1));
  CHECK(e.c[1].at(0, 0) == GaussRat(Rat(0), rat(1, 2)));
  CHECK(e.c[2].at(0, 0) == GaussRat(rat(-1, 8)));
  Jet prod = jet_mul_trunc(e, exp_jet(rat(-1, 2), 4), 4);
  CHECK(prod.c[0].at(0, 0) == GaussRat(1));
  for (int j = 1; j <= 4; ++j) CHECK(prod.c[static_cast<size_t>(j)].is_zero());
}

TEST_CASE("jets at pi expand around the alternating base point") {
  Seq d1 = sseq(1, {"1"});  // delta(. - 1), symbol exp(-i xi)
  Jet f = jet_of(d1, JetBase::pi, 2);
  CHECK(f.base == JetBase::pi);
  CHECK(f.c[0].at(0, 0) == GaussRat(-1));
  CHECK(f.c[1].at(0, 0) == GaussRat::i());
  CHECK(f.c[2].at(0, 0) == GaussRat(rat(1, 2)));
}

TEST_CASE("factorial and i powers") {
  CHECK(factorial(0) == Rat(1));
  CHECK(factorial(5) == Rat(120));
  CHECK(GaussRat::i_pow(0) == GaussRat(1));
  CHECK(GaussRat::i_pow(2) == GaussRat(-1));
  CHECK(GaussRat::i_pow(7) == -GaussRat::i());
  CHECK(GaussRat::i_pow(-1) == -GaussRat::i());
}
