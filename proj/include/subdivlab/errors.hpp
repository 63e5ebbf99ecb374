#pragma once

#include <stdexcept>
#include <string>

namespace subdivlab {

// Base class for everything thrown on purpose.  The CLI maps ParseError to
// exit code 1 and every other SubdivError to exit code 2.
struct SubdivError : std::runtime_error {
  explicit SubdivError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : SubdivError {
  using SubdivError::SubdivError;
};
struct DimensionMismatch : SubdivError {
  using SubdivError::SubdivError;
};
struct SingularSystem : SubdivError {
  using SubdivError::SubdivError;
};
struct AmbiguousEigenvector : SubdivError {
  using SubdivError::SubdivError;
};
struct NormalizationFailure : SubdivError {
  using SubdivError::SubdivError;
};
struct ResourceLimit : SubdivError {
  using SubdivError::SubdivError;
};
struct InfeasibleSystem : SubdivError {
  using SubdivError::SubdivError;
};
struct UnknownExample : SubdivError {
  using SubdivError::SubdivError;
};
struct UnsupportedOperation : SubdivError {
  using SubdivError::SubdivError;
};

}  // namespace subdivlab
