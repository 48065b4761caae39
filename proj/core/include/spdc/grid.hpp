#pragma once

#include <cmath>

#include "spdc/error.hpp"

namespace spdc {

/// Symmetric transverse-momentum grid: n samples spanning [-q_max, q_max]
/// inclusive on one axis, spacing dq = 2 q_max / (n - 1). The conjugate
/// position grid has spacing dx = 2 pi / (n dq) and shares the centering, so
/// the centered discrete Fourier transform between them is exactly unitary.
struct TransverseGrid {
  int n = 512;           // samples per axis, power of two
  double q_max = 0.0;    // rad/um

  TransverseGrid() = default;
  TransverseGrid(int n_, double q_max_) : n(n_), q_max(q_max_) { validate(); }

  void validate() const {
    if (n < 32 || (n & (n - 1)) != 0)
      throw ValidationError("TransverseGrid: n must be a power of two >= 32");
    if (!(q_max > 0.0))
      throw ValidationError("TransverseGrid: q_max must be positive");
  }

  double dq() const { return 2.0 * q_max / (n - 1); }
  double dx() const { return 2.0 * M_PI / (n * dq()); }
  double center() const { return 0.5 * (n - 1); }
  double q(int i) const { return (i - center()) * dq(); }
  double x(int i) const { return (i - center()) * dx(); }
};

} // namespace spdc
