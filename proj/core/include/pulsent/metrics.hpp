#pragma once

#include <array>

#include "pulsent/gaussian_state.hpp"

namespace pulsent {

struct EntanglementReport {
  double delta_epr = 0.0;
  double log_negativity = 0.0;
  double fidelity = 0.0;
  bool entangled = false;                   // delta_epr < 2
  std::array<double, 2> symplectic_eigs{};  // ν₋ of the state, ν̃₋ of its partial transpose
};

/// Var(X_m + P_l) + Var(P_m + X_l).
double epr_variance(const GaussianState& state);

/// max(0, −ln(2ν̃₋)). `tol` is the admissible violation of ν₋ >= 1/2.
double log_negativity(const GaussianState& state, double tol = 1e-9);

/// Coherent-state fidelity of teleportation using `state` as the resource.
double teleport_fidelity(const GaussianState& state);

EntanglementReport entanglement_report(const GaussianState& state, double tol = 1e-9);

}  // namespace pulsent
