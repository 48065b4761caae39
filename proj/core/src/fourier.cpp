#include "spdc/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <mutex>
#include <vector>

namespace spdc {

namespace {

// FFTW planning is not thread-safe; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

} // namespace

Eigen::MatrixXcd centered_fourier_2d(const Eigen::MatrixXcd& in,
                                     const TransverseGrid& grid) {
  const int n = grid.n;
  if (in.rows() != n || in.cols() != n)
    throw ValidationError("centered_fourier_2d: matrix does not match grid");

  // With q_j = (j - c) dq, x_m = (m - c) dx and dx dq = 2 pi / n,
  //   q_j x_m = (2 pi / n)(j m - c (j + m) + c^2),
  // so the centered kernel factors into pre/post phase ramps around a plain
  // DFT: e^{-i q_j x_m} = d_j d_m s, d_j = e^{2 pi i c j / n},
  // s = e^{-2 pi i c^2 / n} (c = (n-1)/2 need not be an integer).
  const double c = grid.center();
  std::vector<std::complex<double>> ramp(n);
  for (int j = 0; j < n; ++j) {
    const double ph = 2.0 * M_PI * c * j / n;
    ramp[j] = {std::cos(ph), std::sin(ph)};
  }

  Eigen::MatrixXcd work(n, n);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) work(j, l) = in(j, l) * ramp[j] * ramp[l];

  {
    fftw_plan plan;
    {
      std::lock_guard<std::mutex> lock(planner_mutex());
      plan = fftw_plan_dft_2d(
          n, n, reinterpret_cast<fftw_complex*>(work.data()),
          reinterpret_cast<fftw_complex*>(work.data()), FFTW_FORWARD,
          FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
      std::lock_guard<std::mutex> lock(planner_mutex());
      fftw_destroy_plan(plan);
    }
  }

  // Eigen is column-major, fftw_plan_dft_2d row-major: the in-place square
  // transform sees the transposed input and deposits the transposed output,
  // and the two transpositions cancel.
  const double ph_s = -2.0 * M_PI * c * c / n;
  const double amp = grid.dq() * grid.dq() / (2.0 * M_PI);
  const std::complex<double> scale =
      amp * std::complex<double>{std::cos(2.0 * ph_s), std::sin(2.0 * ph_s)};
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k) work(m, k) *= scale * ramp[m] * ramp[k];
  return work;
}

Eigen::MatrixXcd partial_fourier_rows(const Eigen::MatrixXcd& in,
                                      const TransverseGrid& grid,
                                      std::span<const double> x_um) {
  const int n = grid.n;
  if (in.rows() != n || in.cols() != n)
    throw ValidationError("partial_fourier_rows: matrix does not match grid");

  const double amp = grid.dq() / std::sqrt(2.0 * M_PI);
  Eigen::MatrixXcd kernel(static_cast<Eigen::Index>(x_um.size()), n);
  for (Eigen::Index t = 0; t < kernel.rows(); ++t) {
    const double x = x_um[static_cast<std::size_t>(t)];
    for (int j = 0; j < n; ++j) {
      const double ph = -grid.q(j) * x;
      kernel(t, j) = amp * std::complex<double>{std::cos(ph), std::sin(ph)};
    }
  }
  return kernel * in;
}

} // namespace spdc
