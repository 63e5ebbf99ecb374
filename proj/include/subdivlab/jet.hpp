#pragma once

#include <utility>
#include <vector>

#include "subdivlab/sequence.hpp"

namespace subdivlab {

enum class JetBase { zero, pi };

// Truncated Taylor expansion of a symbol at 0 or pi.  c[j] is the j-th
// Taylor coefficient (derivative divided by j!), so jets multiply by the
// plain Cauchy product.
struct Jet {
  JetBase base = JetBase::zero;
  int rows = 0, cols = 0;
  std::vector<QMat> c;

  Jet() = default;
  Jet(JetBase b, int r, int cl, int order)
      : base(b), rows(r), cols(cl), c(static_cast<size_t>(order) + 1, QMat(r, cl)) {}

  int order() const { return static_cast<int>(c.size()) - 1; }

  friend bool operator==(const Jet& a, const Jet& b) {
    return a.base == b.base && a.rows == b.rows && a.cols == b.cols && a.c == b.c;
  }
};

// A matching filter as a 1 x r jet at 0, normalized so the first nonzero
// entry of c[0] equals 1.
using FilterJet = Jet;

Rat factorial(int n);

// Jet of the symbol of u at the base point, to order m.
Jet jet_of(const Seq& u, JetBase base, int m);

Jet jet_add(const Jet& a, const Jet& b);
Jet jet_sub(const Jet& a, const Jet& b);
Jet jet_scale(Jet a, const GaussRat& c);
Jet jet_truncate(Jet a, int m);

// Cauchy product; operands must share base and order.
Jet jet_mul(const Jet& a, const Jet& b);
// Product truncated to order m, accepting operands of order >= m.
Jet jet_mul_trunc(const Jet& a, const Jet& b, int m);

// f(lambda * xi) for a jet at 0.
Jet jet_scale_arg(const Jet& a, const GaussRat& lambda);

// Reciprocal power series of a 1x1 jet with nonzero constant term.
Jet jet_recip(const Jet& a, int m);

// Smallest j <= m with c[j] != 0 (or m itself when all vanish) together with
// beta = c[j] / i^j.  1x1 jets only.
std::pair<int, GaussRat> leading_degree(const Jet& f, int m);

// Jet of e^{i s xi} at 0: coefficients (i s)^j / j!.
Jet exp_jet(const Rat& s, int m);

}  // namespace subdivlab
