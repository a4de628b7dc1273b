#pragma once

#include "pulsent/drift.hpp"
#include "pulsent/gaussian_state.hpp"

namespace pulsent {

/// Continuous-drive steady state over (x_m, p_m, x_c, p_c) from
/// Aσ + σAᵀ + N = 0. Throws NumericalError naming the offending eigenvalue
/// when A is not Hurwitz.
GaussianState cw_steady_state(const DriftModel& drift);

/// Largest real part among the eigenvalues of A.
double spectral_abscissa(const Mat4& a);

/// Smallest coupling g at which the drift at this detuning becomes unstable,
/// searched up to g_max; g_max itself when stable throughout.
double instability_threshold(PhysicalParams p, double g_max);

struct CwScanResult {
  double log_negativity = 0.0;
  double detuning = 0.0;  // rad/s, Δ = ω_c − ω_l
  double g = 0.0;         // rad/s
  double g_threshold = 0.0;
  GaussianState state;
};

/// Maximizes the steady-state log-negativity over detuning in
/// [det_lo, det_hi] and coupling below the instability threshold. The fields
/// g and detuning of `p` are ignored; damping and n̄ are taken from it.
CwScanResult cw_negativity_scan(const PhysicalParams& p, double det_lo, double det_hi,
                                int detuning_points = 141, int coupling_points = 200);

}  // namespace pulsent
