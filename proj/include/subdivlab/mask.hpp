#pragma once

#include <optional>

#include "subdivlab/jet.hpp"
#include "subdivlab/sequence.hpp"

namespace subdivlab {

// Point symmetry a(2c - k) = S a(k) S^{-1} with S = diag(signs) and c a
// half-integer (stored exactly; 2c is an integer).
struct Symmetry {
  Rat center;
  std::vector<int> signs;
};

struct Mask {
  int r = 1;
  Seq a;  // r x r coefficients on the support window
  std::optional<Symmetry> sym;
  std::optional<Jet> filter;  // recorded matching-filter jets, when given

  int support_lo() const { return a.lo; }
  int support_hi() const { return a.hi(); }
};

// symbol at 0: sum_k a(k).
QMat symbol_at_zero(const Mask& m);

// Exact check of the declared symmetry; true when none is declared.
bool symmetry_holds(const Mask& m);

}  // namespace subdivlab
