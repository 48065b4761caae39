#pragma once

#include <Eigen/Dense>
#include <span>

#include "spdc/grid.hpp"

namespace spdc {

/// Centered unitary 2D Fourier transform between the grid's q-axis and its
/// conjugate x-axis (both matrix indices transformed, kernel e^{-i q x}):
///
///   out[m,k] = (dq^2 / 2 pi) sum_{j,l} in[j,l] e^{-i (q_j x_m + q_l x_k)}
///
/// With dx dq = 2 pi / n this is exactly unitary under the physical cell
/// measures: sum |out|^2 dx^2 == sum |in|^2 dq^2 to rounding.
Eigen::MatrixXcd centered_fourier_2d(const Eigen::MatrixXcd& in,
                                     const TransverseGrid& grid);

/// Transform only the first (row) index onto arbitrary positions x:
///   out[t,k] = (dq / sqrt(2 pi)) sum_j in[j,k] e^{-i q_j x_t}.
/// Used to evaluate near-field marginals at resolutions finer than the
/// conjugate grid spacing.
Eigen::MatrixXcd partial_fourier_rows(const Eigen::MatrixXcd& in,
                                      const TransverseGrid& grid,
                                      std::span<const double> x_um);

} // namespace spdc
