#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pulsent/gaussian_state.hpp"
#include "pulsent/params.hpp"

namespace pulsent {

struct ObjectiveOptions {
  bool thermal = true;       // add (2n̄+1)ε
  double rate_scale = 1.0;   // output mode rate in units of G
  bool search_rate = false;  // minimize over rate_scale in [0.5, 1.5] instead
};

/// Pulse output state at the dimensionless point (ε, η, ξ) for a blue pulse
/// at Δ = −ω_m, in units where ω_m = 1.
GaussianState objective_state(const DimensionlessParams& d, const ObjectiveOptions& opt = {});

/// Δ_EPR of objective_state. Numerical failures are rethrown as
/// NumericalError naming the parameter triple.
double objective(double eps, double eta, double xi, double n_bar, double n0, double Q,
                 const ObjectiveOptions& opt = {});

struct SearchBounds {
  double eps_lo = 1e-8;
  double eps_hi = 1.0;  // further capped at 1/n̄
  double eta_lo = 1e-3;
  double eta_hi = 2.0;
  double xi_lo = 1e-3;
  double xi_hi = 1.0;
};

/// Laboratory frame used to turn a dimensionless optimum into an operating point.
struct Device {
  double omega_m = 0.0;  // rad/s
  double g0 = 0.0;       // rad/s
  std::optional<double> wavelength;
  RateConvention convention = RateConvention::cyclic;
};

struct OptimizerOptions {
  SearchBounds bounds;
  int points_per_decade = 8;
  int refine_seeds = 5;
  double f_tol = 1e-7;
  double x_tol = 1e-5;  // relative, per coordinate
  int max_evaluations = 4000;  // per local refinement
  unsigned threads = 1;
  ObjectiveOptions objective;
  std::optional<std::array<double, 3>> warm_start;  // (ε, η, ξ)
  std::optional<Device> device;
};

struct OptimizerDiagnostics {
  long evaluations = 0;
  long iterations = 0;
  int restarts = 0;
  bool converged = false;
  std::string error;  // set when the point failed
};

struct OptimizationResult {
  double n_bar = 0.0;
  double n0 = 0.0;
  double Q = 0.0;
  double eps_opt = 0.0;
  double eta_opt = 0.0;
  double xi_opt = 0.0;
  double delta_epr_min = 0.0;
  double thermal_share = 0.0;  // (2n̄+1)ε_opt
  double eps_prime = 0.0;      // ε_opt/Δ_EPR
  std::optional<OperatingPoint> derived;
  std::optional<HierarchyReport> hierarchy;
  OptimizerDiagnostics diagnostics;

  DimensionlessParams point() const;
  bool ok() const { return diagnostics.error.empty(); }
};

/// Minimizes Δ_EPR over (ε, η, ξ): logarithmic seed grid, then bounded
/// Nelder–Mead in log coordinates from the best seeds. Deterministic for any
/// thread count. Throws NumericalError when every refinement fails.
OptimizationResult optimize(double n_bar, double n0, double Q, const OptimizerOptions& opt = {});

/// Optimizes each n̄ in order, seeding each point with the previous optimum.
/// Failed points carry diagnostics.error and the sweep continues.
std::vector<OptimizationResult> sweep(const std::vector<double>& n_bar_list, double n0, double Q,
                                      const OptimizerOptions& opt = {});

/// Fills derived operating point and hierarchy diagnostics for a device.
void attach_device(OptimizationResult& r, const Device& device);

}  // namespace pulsent
