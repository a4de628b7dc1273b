#pragma once

#include <complex>
#include <vector>

#include "pulsent/params.hpp"

namespace pulsent {

/// Normalized drive envelope ε(t) on [0, τ], ∫|ε|² dt = 1.
///
/// flat_top: raised-cosine (sin²) head and tail, each ramp_fraction·τ long,
/// around a constant plateau. step: constant 1/√τ with hard edges.
class PulseEnvelope {
 public:
  enum class Shape { flat_top, step };

  static PulseEnvelope flat_top(double tau, double ramp_fraction = 0.1);
  static PulseEnvelope step(double tau);

  double value(double t) const;
  double derivative(double t) const;
  /// sup |ε̇|; infinite for the step.
  double max_slope() const;
  double plateau() const { return amplitude_; }
  double tau() const { return tau_; }
  double ramp_fraction() const { return ramp_fraction_; }
  double ramp_time() const { return ramp_fraction_ * tau_; }
  Shape shape() const { return shape_; }

  /// Samples on a uniform grid with `intervals` intervals.
  std::vector<double> sample_times(int intervals) const;
  std::vector<double> sample_values(int intervals) const;

 private:
  PulseEnvelope(Shape s, double tau, double ramp_fraction);
  Shape shape_;
  double tau_;
  double ramp_fraction_;
  double amplitude_;
};

struct AmplitudeOptions {
  bool locked_detuning = true;  // Δ_eff held at the configured detuning
  int samples = 2000;           // output trajectory intervals
  double rel_tol = 1e-10;
  double abs_tol = 1e-10;
};

/// Classical cavity (α) and mirror (β) amplitudes in the displaced frame
///   α̇ = −(iΔ_eff + κ)α + E(t),   β̇ = −iω_m β − i g0 |α|²,
/// with E = sqrt(2κ N_ph)·ε(t) and Δ_eff = Δ0 + g0(β + β*) unless locked.
struct AmplitudeSolution {
  std::vector<double> t;
  std::vector<std::complex<double>> alpha;
  std::vector<std::complex<double>> beta;
  std::vector<double> delta_eff;
  double delta_bound = 0.0;  // sup|Ė| / (κ |E_plateau|)
  double min_plateau_alpha = 0.0;
};

/// Drive strength parameters come from p: kappa, detuning (Δ0), omega_m, g0.
AmplitudeSolution solve_amplitudes(const PhysicalParams& p, double n_ph,
                                   const PulseEnvelope& envelope,
                                   const AmplitudeOptions& opt = {});

/// α = E/(iΔ_eff + κ), β = −(g0/ω_m)|α|², Δ_eff = Δ0 − 2g0²|α|²/ω_m. With an
/// unlocked detuning Δ_eff is solved self-consistently.
AmplitudeSolution adiabatic_amplitudes(const PhysicalParams& p, double n_ph,
                                       const PulseEnvelope& envelope,
                                       const AmplitudeOptions& opt = {});

/// Largest |α_exact − α_adiabatic|/|α_adiabatic| over the plateau samples.
double plateau_deviation(const AmplitudeSolution& exact, const AmplitudeSolution& adiabatic,
                         const PulseEnvelope& envelope);

/// With g0 = 0 the cavity is a linear filter of the drive. Returns the largest
/// relative difference between the integrated α(t) and adaptive quadrature of
/// ∫₀ᵗ e^{−(iΔ+κ)(t−s)} E(s) ds at `probes` evenly spaced times.
double linear_filter_check(const PhysicalParams& p, const PulseEnvelope& envelope,
                           int probes = 16);

struct EnvelopeCheck {
  const char* name = "";
  double value = 0.0;
  Flag flag = Flag::pass;
};

struct EnvelopeReport {
  EnvelopeCheck delta_bound;      // sup|Ė|/(κ|E|)
  EnvelopeCheck slow_variation;   // max d|α|²/dt relative to ω_m|α_plateau|²
  EnvelopeCheck cavity_response;  // 1/(κτ)
  Flag worst() const;
};

/// Thresholds: warn above 0.1, fail above 1.
EnvelopeReport validate_envelope(const PhysicalParams& p, const PulseEnvelope& envelope);

}  // namespace pulsent
