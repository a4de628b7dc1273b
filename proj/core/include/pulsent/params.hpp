#pragma once

#include <array>
#include <optional>
#include <string>

namespace pulsent {

namespace constants {
inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double two_pi = 2.0 * pi;
inline constexpr double hbar = 1.054571817e-34;     // J s
inline constexpr double k_boltzmann = 1.380649e-23;  // J / K
inline constexpr double speed_of_light = 299792458.0;
}  // namespace constants

/// Dimensional description of the cavity-mirror system.
///
/// Every rate and frequency is angular (rad/s). Conversion from the Hz values
/// quoted in configs and tables happens at the I/O boundary. The detuning uses
/// Δ = ω_c − ω_l, so the entangling (blue) pulse sits at Δ = −ω_m.
struct PhysicalParams {
  double omega_m = 0.0;
  double kappa = 0.0;
  double gamma = 0.0;
  double g0 = 0.0;
  double g = 0.0;
  double detuning = 0.0;
  double tau = 0.0;
  double n_bar = 0.0;
  double n0 = 0.0;
  std::optional<double> lambda_l;  // laser wavelength (m), only for power reporting

  double quality_factor() const { return omega_m / gamma; }
  /// G = g²/κ, the effective two-mode-squeezing / swap rate.
  double squeezing_rate() const { return g * g / kappa; }
  /// r = Gτ.
  double squeezing() const { return squeezing_rate() * tau; }

  /// Throws DomainError if any invariant is violated.
  void validate() const;
};

/// Optimization coordinates plus the fixed environment (n̄, n0, Q).
struct DimensionlessParams {
  double eta = 0.0;      // κ/ω_m
  double xi = 0.0;       // g/κ
  double epsilon = 0.0;  // γτ
  double n_bar = 0.0;
  double n0 = 0.0;
  double Q = 0.0;

  /// r = Gτ expressed through the dimensionless groups: ξ²·ε·Q·η.
  double squeezing() const { return xi * xi * epsilon * Q * eta; }

  void validate() const;
};

DimensionlessParams to_dimensionless(const PhysicalParams& p);

/// Rebuilds a physical description at mechanical frequency omega_m. The
/// detuning is set to detuning_in_omega_m · ω_m (−1 for the blue pulse).
PhysicalParams from_dimensionless(const DimensionlessParams& d, double omega_m, double g0,
                                  double detuning_in_omega_m = -1.0);

/// Linearized coupling g = g0·sqrt(2κ/(Δ²+κ²) · N_ph/τ).
double effective_coupling(double g0, double kappa, double detuning, double n_ph, double tau);

/// Photon number needed to reach coupling g; exact inverse of effective_coupling.
double photons_for_coupling(double g, double g0, double kappa, double detuning, double tau);

/// Mean optical power ħ·ω_l·N_ph/τ. Empty when no wavelength is known.
std::optional<double> mean_power(double n_ph, double tau, std::optional<double> wavelength);

/// Bose–Einstein occupation 1/(exp(ħω/k_B T) − 1); zero at T = 0.
double occupation_from_temperature(double omega_m, double temperature);

/// High-temperature form k_B T/(ħω).
double occupation_high_temperature(double omega_m, double temperature);

enum class Flag { pass, warn, fail };

std::string to_string(Flag f);

/// pass for ratio <= 0.5, warn up to 1, fail above.
Flag flag_for_ratio(double ratio, double warn_above = 0.5, double fail_above = 1.0);

struct RatioCheck {
  std::string name;
  double ratio = 0.0;
  Flag flag = Flag::pass;
};

/// Diagnostics for n̄γ ≪ 1/τ ≪ g ≪ κ ≪ ω_m.
struct HierarchyReport {
  std::array<RatioCheck, 4> checks;  // n̄γτ, 1/(gτ), g/κ, κ/ω_m
  bool any_fail() const;
  Flag worst() const;
};

HierarchyReport validate_hierarchy(const PhysicalParams& p);

/// How dimensionless optima are turned into laboratory numbers.
///
/// angular: γ = ω_m/Q with ω_m in rad/s, so τ = ε·Q/ω_m.
/// cyclic:  the published operating-point table converts with rates in Hz,
///          τ = ε·Q/f_m and P = ħω_l·(g/g0)²·(Δ²+κ²)/(2κ) with Hz-valued rates.
///          Both conventions give identical κ/2π, g/2π and N_ph.
enum class RateConvention { angular, cyclic };

struct OperatingPoint {
  double kappa = 0.0;  // rad/s
  double g = 0.0;      // rad/s
  double gamma = 0.0;  // rad/s
  double tau = 0.0;    // s, in the requested convention
  double n_ph = 0.0;
  std::optional<double> power;  // W
  RateConvention convention = RateConvention::angular;
};

OperatingPoint operating_point(const DimensionlessParams& d, double omega_m, double g0,
                               std::optional<double> wavelength,
                               RateConvention convention = RateConvention::angular);

}  // namespace pulsent
