#pragma once

#include <stdexcept>
#include <string>

namespace gmlab {

struct invalid_parameter : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct invalid_input : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct unsupported_model : std::logic_error {
  using std::logic_error::logic_error;
};

struct capacity_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Quadrature order too small for the requested band limit; Schur
// orthogonality would fail silently otherwise.
struct under_resolved_quadrature : invalid_parameter {
  using invalid_parameter::invalid_parameter;
};

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace gmlab
