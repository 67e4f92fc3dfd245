#pragma once

#include <stdexcept>
#include <string>

namespace gpnex {

// Kernel parameter outside its family's admissible domain.
struct InvalidParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Kernel family not defined in the requested dimension.
struct UnsupportedDimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Evaluation at xi = 0 requested for a transform discontinuous there.
struct OriginEvaluationError : std::domain_error {
  using std::domain_error::domain_error;
};

// No sign change found when bracketing a dispersion-curve root.
struct NoRootError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Curve continuation jumped branches (slope discontinuity detected).
struct LostBranchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The two branch limits disagree beyond tolerance.
struct BranchMismatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonRadialModelError : std::logic_error {
  using std::logic_error::logic_error;
};

struct DivergentQuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or invalid run configuration document.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace gpnex
