#include "spdc/schmidt.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>

namespace spdc {

namespace {

// (sum I mu)^2 / (sum I^2 mu) for one plane.
double coherence_ratio(const IntensityProfile& p, const char* which) {
  double s1 = 0.0, s2 = 0.0;
  for (std::size_t i = 0; i < p.intensity.size(); ++i) {
    s1 += p.intensity[i] * p.cell[i];
    s2 += p.intensity[i] * p.intensity[i] * p.cell[i];
  }
  if (!(s1 > 0.0)) {
    std::ostringstream os;
    os << "schmidt_from_intensities: " << which << " profile has zero total intensity";
    throw ValidationError(os.str());
  }
  return s1 * s1 / s2;
}

} // namespace

SchmidtResult schmidt_from_intensities(const IntensityProfile& nf,
                                       const IntensityProfile& ff, int dim) {
  nf.validate();
  ff.validate();
  if (dim != 1 && dim != 2)
    throw ValidationError("schmidt_from_intensities: dim must be 1 or 2");
  if (nf.plane != Plane::NearField || ff.plane != Plane::FarField)
    throw ValidationError("schmidt_from_intensities: profiles must be tagged near-field and far-field");
  if (nf.measure_dim != dim || ff.measure_dim != dim) {
    std::ostringstream os;
    os << "schmidt_from_intensities: profile measure dimensionality ("
       << nf.measure_dim << ", " << ff.measure_dim << ") does not match dim = " << dim;
    throw ValidationError(os.str());
  }

  const double norm = std::pow(2.0 * M_PI, -dim);
  SchmidtResult r;
  r.k = norm * coherence_ratio(nf, "near-field") * coherence_ratio(ff, "far-field");
  r.method = SchmidtMethod::IntensityEstimator;
  r.dim = dim == 1 ? SchmidtDim::PerAxis : SchmidtDim::Full2D;
  std::ostringstream fp;
  fp << "nf_samples=" << nf.intensity.size() << ";ff_samples=" << ff.intensity.size()
     << ";dim=" << dim;
  r.fingerprint = fp.str();
  return r;
}

SchmidtResult schmidt_svd(const BiphotonMatrix& phi) {
  if (phi.phi.size() == 0 || phi.phi.cwiseAbs().maxCoeff() == 0.0)
    throw ValidationError("schmidt_svd: matrix is empty or all zero");

  // Eigenvalues of the Gram matrix (phi dq)(phi dq)^dagger are the squared
  // singular values; only their relative spectrum enters K.
  const double dq = phi.grid.dq();
  const Eigen::MatrixXcd a = phi.phi * dq;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es;
  es.compute(a * a.adjoint(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw SolverError("schmidt_svd: eigenvalue decomposition failed");

  double sum = 0.0, sum2 = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double s2 = std::max(es.eigenvalues()[i], 0.0);
    sum += s2;
    sum2 += s2 * s2;
  }
  if (!(sum2 > 0.0))
    throw SolverError("schmidt_svd: degenerate singular spectrum");

  SchmidtResult r;
  r.k = sum * sum / sum2;
  r.method = SchmidtMethod::SvdOracle;
  r.dim = SchmidtDim::PerAxis;
  std::ostringstream fp;
  fp << "T=" << phi.temperature_c << ";lambda_s=" << phi.lambda_s_um
     << ";n=" << phi.grid.n << ";q_max=" << phi.grid.q_max;
  r.fingerprint = fp.str();
  return r;
}

SchmidtSweep schmidt_sweep(const CrystalConfig& crystal, const PumpBeam& pump,
                           const TransverseGrid& grid, double lambda_s_um,
                           double t_start_c, double t_stop_c, double t_step_c,
                           bool with_svd_oracle) {
  if (!(t_step_c > 0.0) || t_stop_c < t_start_c)
    throw ValidationError("schmidt_sweep: invalid temperature range");

  SchmidtSweep sweep;
  const long n = static_cast<long>(std::floor((t_stop_c - t_start_c) / t_step_c + 0.5)) + 1;
  for (long i = 0; i < n; ++i) {
    const Temperature t{t_start_c + static_cast<double>(i) * t_step_c};
    try {
      const BiphotonMatrix phi = biphoton_matrix(lambda_s_um, t, crystal, pump, grid);
      const NearFieldMatrix psi = nearfield_matrix(phi);
      const IntensityProfile ff = farfield_marginal(phi);
      const IntensityProfile nf = nearfield_marginal(psi);
      SchmidtResult est = schmidt_from_intensities(nf, ff, 1);

      SchmidtSweepPoint p;
      p.temperature_c = t.celsius;
      p.k_per_axis = est.k;
      p.k_full_2d = est.k * est.k;
      if (with_svd_oracle) p.k_svd_per_axis = schmidt_svd(phi).k;
      sweep.points.push_back(p);
    } catch (const std::exception& e) {
      std::ostringstream os;
      os << "T = " << t.celsius << " C: " << e.what();
      sweep.diagnostics.push_back(os.str());
    }
  }
  return sweep;
}

} // namespace spdc
