#pragma once

#include <complex>
#include <vector>

#include "subdivlab/smallmat.hpp"

namespace subdivlab {

// Dense float spectrum, sorted ascending by (re, im) after rounding to 1e-9,
// so equal-magnitude pairs come out in a stable order.
std::vector<std::complex<double>> float_eigenvalues(const CMat& m);

}  // namespace subdivlab
