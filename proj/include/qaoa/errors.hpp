#pragma once

#include <stdexcept>

namespace qaoa {

// Instance size exceeds what exact enumeration / statevector simulation supports.
struct capacity_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Approximation ratio requested for an edgeless graph (C_max = 0).
struct undefined_ratio_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A required file (model, calibration, dataset) is missing for a run.
struct missing_artifact_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qaoa
