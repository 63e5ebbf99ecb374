#include <doctest.h>

#include "test_util.hpp"

using namespace subdivlab;
using namespace testutil;

TEST_CASE("convolution: associativity and symbol product") {
  std::mt19937 rng(20260818u);
  for (int rep = 0; rep < 5; ++rep) {
    Seq u = random_seq(rng, 2, 2, -2, 4);
    Seq v = random_seq(rng, 2, 2, -1, 3);
    Seq w = random_seq(rng, 2, 1, 0, 3);
    CHECK(seq_conv(seq_conv(u, v), w) == seq_conv(u, seq_conv(v, w)));
    Seq uv = seq_conv(u, v);
    for (int t = 0; t < 20; ++t) {
      double xi = -3.1 + 0.37 * t;
      CHECK(cdist(symbol_eval(uv, xi), symbol_eval(u, xi) * symbol_eval(v, xi)) < 1e-9);
    }
  }
}

TEST_CASE("convolution with the delta identity is the identity") {
  std::mt19937 rng(3u);
  Seq u = random_seq(rng, 2, 2, -3, 6);
  CHECK(seq_conv(u, delta_id(2)) == u);
  CHECK(seq_conv(delta_id(2), u) == u);
}

TEST_CASE("upsampling doubles the symbol argument and scales the support") {
  std::mt19937 rng(7u);
  Seq u = random_seq(rng, 2, 2, -3, 5);
  Seq u2 = upsample(u, 2);
  CHECK(u2.lo == 2 * u.lo);
  CHECK(u2.hi() == 2 * u.hi());
  for (int t = 0; t < 20; ++t) {
    double xi = -2.9 + 0.31 * t;
    CHECK(cdist(symbol_eval(u2, xi), symbol_eval(u, 2 * xi)) < 1e-10);
  }
}

TEST_CASE("coset split reassembles the sequence") {
  std::mt19937 rng(11u);
  Seq u = random_seq(rng, 2, 1, -4, 7);
  Seq e = coset(u, 0), o = coset(u, 1);
  for (int k = u.lo - 2; k <= u.hi() + 2; ++k) {
    int g = ((k % 2) + 2) % 2;
    const Seq& half = (g == 0) ? e : o;
    CHECK(u.get(k) == half.get((k - g) / 2));
  }
  // u^(xi) = e^(2 xi) + exp(-i xi) o^(2 xi)
  for (int t = 0; t < 12; ++t) {
    double xi = -1.9 + 0.33 * t;
    CMat rhs = symbol_eval(e, 2 * xi);
    CMat oo = symbol_eval(o, 2 * xi);
    std::complex<double> ph = std::exp(std::complex<double>(0, -xi));
    for (int i = 0; i < rhs.rows; ++i)
      for (int j = 0; j < rhs.cols; ++j) rhs.at(i, j) += ph * oo.at(i, j);
    CHECK(cdist(symbol_eval(u, xi), rhs) < 1e-10);
  }
}

TEST_CASE("difference and shift act on symbols as expected") {
  std::mt19937 rng(13u);
  Seq u = random_seq(rng, 1, 1, -2, 5);
  Seq du = difference(u);
  Seq su = seq_shift(u, 3);
  for (int t = 0; t < 12; ++t) {
    double xi = 0.21 * t - 1.0;
    std::complex<double> uh = symbol_eval(u, xi).at(0, 0);
    std::complex<double> want_d = (1.0 - std::exp(std::complex<double>(0, -xi))) * uh;
    CHECK(std::abs(symbol_eval(du, xi).at(0, 0) - want_d) < 1e-10);
    std::complex<double> want_s = std::exp(std::complex<double>(0, -3 * xi)) * uh;
    CHECK(std::abs(symbol_eval(su, xi).at(0, 0) - want_s) < 1e-10);
  }
  CHECK(difference(u, 2) == difference(difference(u)));
}

TEST_CASE("equality ignores zero padding") {
  Seq a = sseq(0, {"1", "2"});
  Seq b(1, 1, -2, 4);
  b.ref(0).at(0, 0) = GaussRat(1);
  b.ref(1).at(0, 0) = GaussRat(2);
  CHECK(a == b);
  Seq z(1, 1, -3, 3);
  CHECK(z == Seq(1, 1));
}

TEST_CASE("max_abs2 and scaling") {
  Seq u = vseq(-1, {{"1/2", "-3"}, {"i", "2+2*i"}});
  CHECK(max_abs2(u) == Rat(9));
  Seq v = seq_scale(u, GaussRat(-2));
  CHECK(max_abs2(v) == Rat(36));
  CHECK(seq_sub(u, u) == Seq(2, 1));
}
