#include "subdivlab/spline.hpp"

#include "subdivlab/errors.hpp"

namespace subdivlab {

std::vector<GaussRat> SplineOracle::eval(const Rat& x, int deriv) const {
  if (r <= 0 || pieces.empty()) throw DimensionMismatch("empty spline");
  if (deriv < 0) throw DimensionMismatch("negative derivative order");
  std::vector<GaussRat> out(static_cast<size_t>(r));
  Rat N(support());
  if (x < -N || x > N) return out;
  if (x < 0) {
    out = eval(-x, deriv);
    if (deriv % 2 == 1)
      for (auto& v : out) v = GaussRat(0) - v;
    return out;
  }
  // Right-continuous pieces; the right endpoint takes the last piece.
  long p;
  if (x == N) {
    p = support() - 1;
  } else {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    p = f.get_si();
  }
  const auto& piece = pieces[static_cast<size_t>(p)];
  if (static_cast<int>(piece.size()) != r) throw DimensionMismatch("spline piece arity");
  GaussRat xg(x);
  for (int i = 0; i < r; ++i) {
    const auto& coef = piece[static_cast<size_t>(i)];
    // d-th derivative of sum c_k x^k via falling factorials.
    GaussRat acc(0);
    GaussRat xp(1);
    for (size_t k = static_cast<size_t>(deriv); k < coef.size(); ++k) {
      Rat fall(1);
      for (int t = 0; t < deriv; ++t) fall *= Rat(static_cast<long>(k) - t);
      acc = acc + coef[k] * GaussRat(fall) * xp;
      xp = xp * xg;
    }
    out[static_cast<size_t>(i)] = acc;
  }
  return out;
}

}  // namespace subdivlab
