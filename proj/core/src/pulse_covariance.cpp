#include "pulsent/pulse_covariance.hpp"

#include <cmath>

#include "pulsent/errors.hpp"
#include "pulsent/linalg.hpp"

namespace pulsent {

using cplx = std::complex<double>;
using Mat6 = Eigen::Matrix<double, 6, 6>;

cplx OutputMode::operator()(double t) const { return norm * std::exp(rate * t); }

double OutputMode::norm_squared_integral() const {
  const double a = 2.0 * rate.real();
  return norm * norm * tau * linalg::phi1(cplx(a * tau, 0.0)).real();
}

OutputMode OutputMode::normalized(cplx rate, double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw DomainError("OutputMode: tau must be > 0");
  OutputMode m{rate, tau, 1.0};
  m.norm = 1.0 / std::sqrt(m.norm_squared_integral());
  if (!std::isfinite(m.norm) || m.norm == 0.0)
    throw NumericalError("OutputMode: envelope cannot be normalized");
  return m;
}

OutputMode default_output_mode(const DriftModel& drift, double tau, double rate_scale) {
  const double big_g = rate_scale * drift.g * drift.g / drift.kappa;
  const bool blue = drift.detuning < 0.0;
  const cplx rate = blue ? cplx(big_g, drift.omega_m) : cplx(-big_g, -drift.omega_m);
  return OutputMode::normalized(rate, tau);
}

AugmentedSystem augmented_system(const DriftModel& drift, const OutputMode& mode, double n0) {
  if (!(n0 >= 0.0)) throw DomainError("augmented_system: n0 must be >= 0");
  // Filter: d/dt Ã = −ρ* Ã + a_out with a_out = a_in + sqrt(2κ) a_c, so that
  // Ã(τ) = ∫ e^{−ρ*(τ−t)} a_out(t) dt.
  const cplx mu = std::conj(mode.rate);
  const double sk = std::sqrt(2.0 * drift.kappa);
  AugmentedSystem s;
  s.F.setZero();
  s.F.topLeftCorner<4, 4>() = drift.A;
  s.F(4, 4) = -mu.real();
  s.F(4, 5) = mu.imag();
  s.F(5, 4) = -mu.imag();
  s.F(5, 5) = -mu.real();
  s.F(4, 2) = sk;
  s.F(5, 3) = sk;

  Eigen::Matrix<double, 6, 2> bn = Eigen::Matrix<double, 6, 2>::Zero();
  bn(2, 0) = bn(3, 1) = -sk;
  bn(4, 0) = bn(5, 1) = 1.0;
  s.D = 0.5 * bn * bn.transpose();
  // Mechanical bath, if damping is part of the drift.
  s.D(1, 1) += drift.N(1, 1);

  s.cov0.setZero();
  s.cov0(0, 0) = s.cov0(1, 1) = n0 + 0.5;
  s.cov0(2, 2) = s.cov0(3, 3) = 0.5;
  return s;
}

Mat4 readout_covariance(const Mat6& cov, const DriftModel& drift, const OutputMode& mode) {
  // A_out = N e^{ρ*τ} Ã(τ): a complex scale acts as a rotation-dilation on (q, p).
  const cplx fac = mode.norm * std::exp(std::conj(mode.rate) * mode.tau);
  const double ph = drift.omega_m * mode.tau;
  Eigen::Matrix<double, 4, 6> t = Eigen::Matrix<double, 4, 6>::Zero();
  t(0, 0) = std::cos(ph);
  t(0, 1) = -std::sin(ph);
  t(1, 0) = std::sin(ph);
  t(1, 1) = std::cos(ph);
  t(2, 4) = fac.real();
  t(2, 5) = -fac.imag();
  t(3, 4) = fac.imag();
  t(3, 5) = fac.real();
  Mat4 out = t * cov * t.transpose();
  return 0.5 * (out + out.transpose());
}

GaussianState pulse_output_state(const DriftModel& drift, const OutputMode& mode, double n0) {
  const AugmentedSystem s = augmented_system(drift, mode, n0);
  const auto tn = linalg::van_loan(s.F, s.D, mode.tau);
  const Mat6 phi = tn.transition;
  const Mat6 cov = phi * s.cov0 * phi.transpose() + Mat6(tn.noise);
  if (!cov.allFinite()) throw NumericalError("pulse_output_state: covariance overflowed");
  GaussianState out;
  out.cov = readout_covariance(cov, drift, mode);
  return out;
}

GaussianState thermal_augmentation(const GaussianState& state, double n_bar, double epsilon) {
  if (!(n_bar >= 0.0) || !(epsilon >= 0.0))
    throw DomainError("thermal_augmentation: n_bar and epsilon must be >= 0");
  GaussianState out = state;
  const double add = epsilon * (n_bar + 0.5);
  out.cov(0, 0) += add;
  out.cov(1, 1) += add;
  return out;
}

}  // namespace pulsent
