#pragma once

#include <Eigen/Core>

namespace pulsent {

// Closed-form protocol in the rotating-wave, adiabatic limit (g ≪ κ ≪ ω_m, γ = 0).
//
// Quadratures follow x = (a+a†)/√2, p = −i(a−a†)/√2 with vacuum variance 1/2.
// Quadrature matrices act on (X_m, P_m, X_l, P_l).

/// A_out = −c·A_in − i·s·B_in†,  B_out = c·B_in + i·s·A_in†  with c = e^r, s = sqrt(e^{2r}−1).
struct TwoModeSqueezeMap {
  double r = 0.0;
  double cosh_like = 1.0;
  double sinh_like = 0.0;

  Eigen::Matrix4d quadrature_matrix() const;
};

/// A'_out = −t·A'_in + i·w·B_in,  B_out = t·B_in − i·w·A'_in  with t = e^{−Gτ}, w = sqrt(1−e^{−2Gτ}).
struct SwapMap {
  double transmit = 1.0;
  double swap = 0.0;

  Eigen::Matrix4d quadrature_matrix() const;
};

/// 2(n0+1)(e^r − sqrt(e^{2r}−1))², evaluated as 2(n0+1)/(e^r + sqrt(e^{2r}−1))².
double epr_variance_ideal(double r, double n0);

/// Squeezing needed for Δ_EPR = 2: ½·ln((n0+2)²/(4(n0+1))).
double squeezing_threshold(double n0);

TwoModeSqueezeMap entangle_map(double r);
SwapMap swap_map(double g_tau);

struct AddedNoise {
  double var_x = 0.0;
  double var_p = 0.0;
  double total() const { return var_x + var_p; }
};

/// Noise the teleported mirror state picks up on each quadrature; sums to Δ_EPR.
AddedNoise teleport_added_noise(double r, double n0);

/// Coherent-state teleportation fidelity 1/(1 + Δ_EPR/2).
double coherent_fidelity(double delta_epr);

}  // namespace pulsent
