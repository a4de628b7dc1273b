#pragma once

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Core>

#include "pulsent/drift.hpp"
#include "pulsent/gaussian_state.hpp"
#include "pulsent/pulse_covariance.hpp"

namespace pulsent {

/// Uniform grid on [0, τ] with composite Boole (5-point Newton–Cotes) weights.
struct TimeGrid {
  double tau = 0.0;
  int intervals = 0;  // multiple of 4
  std::vector<double> t;
  std::vector<double> w;

  static TimeGrid uniform(double tau, int min_intervals);
  /// At least `per_scale` samples per mechanical period 2π/ω_m and per 1/κ.
  static TimeGrid for_drift(const DriftModel& drift, double tau, int per_scale = 40);

  std::complex<double> integrate(const std::vector<std::complex<double>>& f) const;
};

/// One output operator written as
///   O = c1 b + c2 b† + c3 c + c4 c† + c5 A₁ + c6 A₂†
/// with b, c the initial mechanical and intracavity annihilators and A₁, A₂
/// input modes ∫ env(s)* a_in(s) ds with normalized envelopes.
struct ModeExpansion {
  std::array<std::complex<double>, 6> c{};
  std::vector<std::complex<double>> env1;
  std::vector<std::complex<double>> env2;
};

/// Pulse-edge modes B_out (mechanics, frame rotating at ω_m) and A_out
/// (light projected on the output mode).
struct IOCoefficients {
  ModeExpansion mechanics;
  ModeExpansion light;
  /// Gram matrix ∫ e_a e_b* ds over (mech env1, mech env2, light env1, light env2).
  Eigen::Matrix4cd overlap;
  OutputMode alpha_out;
  TimeGrid grid;
  bool gamma_included = false;
};

IOCoefficients io_relation(const DriftModel& drift, const OutputMode& alpha_out,
                           const TimeGrid& grid);

/// c1…c6 of B_out without a time grid: c1…c4 from M(τ), c5 and c6 as the
/// norms of the input-noise kernels from closed-form noise integrals.
std::array<std::complex<double>, 6> mechanical_coefficients(const DriftModel& drift, double tau);

/// Complex second moments H_ij = ⟨O_i O_j⟩ of (X_B, P_B, X_A, P_A) for a
/// thermal mirror with occupation n0 and vacuum light. Re H is the covariance
/// and 2 Im H the commutator matrix, which equals Ω for a unitary evolution.
Eigen::Matrix4cd output_second_moments(const IOCoefficients& io, double n0);

/// Output covariance plus the thermal augmentation ε(n̄ + 1/2) per
/// mechanical quadrature. Requires an io relation built without damping.
GaussianState output_state(const IOCoefficients& io, double n0, double n_bar, double epsilon);

/// |c1|² − |c2|² + |c3|² − |c4|² + |c5|² − |c6|² for one expansion; 1 for a
/// bosonic output mode.
double commutator_sum(const ModeExpansion& e);

struct ConvergedOutput {
  IOCoefficients io;
  GaussianState state;
  double delta_epr = 0.0;
  int doublings = 0;
  bool converged = false;
};

/// Doubles the grid until Δ_EPR changes by less than `tol`.
ConvergedOutput converged_output(const DriftModel& drift, const OutputMode& alpha_out, double n0,
                                 double n_bar, double epsilon, double tol = 1e-6,
                                 int max_doublings = 8);

}  // namespace pulsent
