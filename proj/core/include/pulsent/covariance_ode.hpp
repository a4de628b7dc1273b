#pragma once

#include <cstddef>

#include <Eigen/Core>

#include "pulsent/drift.hpp"
#include "pulsent/gaussian_state.hpp"

namespace pulsent {

/// Adaptive Runge–Kutta–Fehlberg 7(8) integration; an independent check on
/// the closed-form propagators.
struct OdeOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  std::size_t max_steps = 5'000'000;
};

/// Integrates Ẋ = A X from X(0) = I.
Eigen::MatrixXd ode_propagator(const Eigen::MatrixXd& a, double t, const OdeOptions& opt = {});

/// Integrates σ̇ = Aσ + σAᵀ + N from σ(0) = cov0.
Eigen::MatrixXd ode_covariance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& n,
                               const Eigen::MatrixXd& cov0, double t,
                               const OdeOptions& opt = {});

/// Mean and covariance of the intracavity state (x_m, p_m, x_c, p_c) after
/// time t under the drift model, damping included when the model has it.
GaussianState covariance_ode_oracle(const DriftModel& drift, const GaussianState& state0, double t,
                                    const OdeOptions& opt = {});

}  // namespace pulsent
