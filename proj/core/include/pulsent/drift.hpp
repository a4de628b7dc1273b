#pragma once

#include <Eigen/Core>

#include "pulsent/gaussian_state.hpp"
#include "pulsent/params.hpp"

namespace pulsent {

/// Linear Langevin system Ṙ = A R + noise over R = (x_m, p_m, x_c, p_c):
///
///   ẋ_m =  ω_m p_m
///   ṗ_m = −ω_m x_m − γ p_m − 2g x_c − sqrt(2γ) f
///   ẋ_c =  Δ p_c − κ x_c − sqrt(2κ) x_in
///   ṗ_c = −Δ x_c − κ p_c − 2g x_m − sqrt(2κ) p_in
///
/// N is the diffusion matrix: κ on each cavity quadrature (vacuum input) and,
/// with damping, γ(2n̄+1) on p_m.
struct DriftModel {
  Mat4 A = Mat4::Zero();
  Mat4 N = Mat4::Zero();
  bool gamma_included = false;

  double omega_m = 0.0;
  double kappa = 0.0;
  double detuning = 0.0;
  double g = 0.0;

  /// Coupling of the optical input (x_in, p_in) into R: −sqrt(2κ) on the cavity rows.
  Eigen::Matrix<double, 4, 2> input_coupling() const;
};

DriftModel build_drift(const PhysicalParams& params, bool include_gamma);

}  // namespace pulsent
