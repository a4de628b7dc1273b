#pragma once

#include <complex>

#include <Eigen/Core>

#include "pulsent/drift.hpp"
#include "pulsent/gaussian_state.hpp"

namespace pulsent {

/// Exponential temporal mode α(t) = norm · e^{rate·t} on [0, τ].
///
/// With the laser-frame dynamics the sideband carries its own carrier: the
/// blue pulse (Δ < 0) selects e^{(G + iω_m)t}, the red pulse e^{(−G − iω_m)t}.
struct OutputMode {
  std::complex<double> rate;
  double tau = 0.0;
  double norm = 0.0;

  std::complex<double> operator()(double t) const;
  /// ∫₀^τ |α|² dt, computed in closed form.
  double norm_squared_integral() const;

  static OutputMode normalized(std::complex<double> rate, double tau);
};

/// Default mode for a drift model: rate magnitude rate_scale·G with G = g²/κ,
/// growing for the blue pulse and decaying for the red one.
OutputMode default_output_mode(const DriftModel& drift, double tau, double rate_scale = 1.0);

/// The system plus a filter that accumulates ∫α*(t) a_out(t) dt, as a
/// 6-dimensional linear system over (x_m, p_m, x_c, p_c, q, p) where
/// (q + ip)/√2 is the filter amplitude.
struct AugmentedSystem {
  Eigen::Matrix<double, 6, 6> F;
  Eigen::Matrix<double, 6, 6> D;
  Eigen::Matrix<double, 6, 6> cov0;
};

AugmentedSystem augmented_system(const DriftModel& drift, const OutputMode& mode, double n0);

/// Maps the augmented covariance at t = τ onto (X_B, P_B, X_A, P_A), with
/// B_out the mechanics in the frame rotating at ω_m and A_out the selected
/// light mode.
Mat4 readout_covariance(const Eigen::Matrix<double, 6, 6>& cov, const DriftModel& drift,
                        const OutputMode& mode);

/// Exact output state of one pulse. Damping enters only if the drift includes it.
GaussianState pulse_output_state(const DriftModel& drift, const OutputMode& mode, double n0);

/// Adds ε(n̄ + 1/2) to each mechanical variance: the Brownian force seen by
/// the mechanics during a pulse that is short on the thermal timescale.
GaussianState thermal_augmentation(const GaussianState& state, double n_bar, double epsilon);

}  // namespace pulsent
