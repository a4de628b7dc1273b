#include "pulsent/params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pulsent/errors.hpp"

namespace pulsent {
namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << name << " must be finite and > 0 (got " << v << ")";
    throw DomainError(os.str());
  }
}

void require_nonnegative(double v, const char* name) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << name << " must be finite and >= 0 (got " << v << ")";
    throw DomainError(os.str());
  }
}

}  // namespace

void PhysicalParams::validate() const {
  require_positive(omega_m, "omega_m");
  require_positive(kappa, "kappa");
  require_positive(gamma, "gamma");
  require_positive(g0, "g0");
  require_positive(g, "g");
  require_positive(tau, "tau");
  require_nonnegative(n_bar, "n_bar");
  require_nonnegative(n0, "n0");
  if (!std::isfinite(detuning) || detuning == 0.0)
    throw DomainError("detuning must be finite and non-zero");
  if (!(quality_factor() > 1.0)) throw DomainError("quality factor omega_m/gamma must exceed 1");
  if (lambda_l) require_positive(*lambda_l, "lambda_l");
}

void DimensionlessParams::validate() const {
  require_positive(eta, "eta");
  require_positive(xi, "xi");
  require_positive(epsilon, "epsilon");
  require_nonnegative(n_bar, "n_bar");
  require_nonnegative(n0, "n0");
  if (!(Q > 1.0) || !std::isfinite(Q)) throw DomainError("Q must be finite and > 1");
}

DimensionlessParams to_dimensionless(const PhysicalParams& p) {
  DimensionlessParams d;
  d.eta = p.kappa / p.omega_m;
  d.xi = p.g / p.kappa;
  d.epsilon = p.gamma * p.tau;
  d.n_bar = p.n_bar;
  d.n0 = p.n0;
  d.Q = p.quality_factor();
  return d;
}

PhysicalParams from_dimensionless(const DimensionlessParams& d, double omega_m, double g0,
                                  double detuning_in_omega_m) {
  PhysicalParams p;
  p.omega_m = omega_m;
  p.kappa = d.eta * omega_m;
  p.g = d.xi * p.kappa;
  p.gamma = omega_m / d.Q;
  p.tau = d.epsilon / p.gamma;
  p.g0 = g0;
  p.detuning = detuning_in_omega_m * omega_m;
  p.n_bar = d.n_bar;
  p.n0 = d.n0;
  return p;
}

double effective_coupling(double g0, double kappa, double detuning, double n_ph, double tau) {
  require_positive(g0, "g0");
  require_positive(kappa, "kappa");
  require_positive(std::abs(detuning), "|detuning|");
  require_positive(n_ph, "n_ph");
  require_positive(tau, "tau");
  return g0 * std::sqrt(2.0 * kappa / (detuning * detuning + kappa * kappa) * n_ph / tau);
}

double photons_for_coupling(double g, double g0, double kappa, double detuning, double tau) {
  require_nonnegative(g, "g");
  require_positive(g0, "g0");
  require_positive(kappa, "kappa");
  require_positive(std::abs(detuning), "|detuning|");
  require_positive(tau, "tau");
  const double ratio = g / g0;
  return ratio * ratio * (detuning * detuning + kappa * kappa) / (2.0 * kappa) * tau;
}

std::optional<double> mean_power(double n_ph, double tau, std::optional<double> wavelength) {
  if (!wavelength) return std::nullopt;
  require_positive(*wavelength, "wavelength");
  require_positive(tau, "tau");
  const double omega_l = constants::two_pi * constants::speed_of_light / *wavelength;
  return constants::hbar * omega_l * n_ph / tau;
}

double occupation_from_temperature(double omega_m, double temperature) {
  require_positive(omega_m, "omega_m");
  require_nonnegative(temperature, "temperature");
  if (temperature == 0.0) return 0.0;
  const double x = constants::hbar * omega_m / (constants::k_boltzmann * temperature);
  if (x > 700.0) return 0.0;
  return 1.0 / std::expm1(x);
}

double occupation_high_temperature(double omega_m, double temperature) {
  require_positive(omega_m, "omega_m");
  require_nonnegative(temperature, "temperature");
  return constants::k_boltzmann * temperature / (constants::hbar * omega_m);
}

std::string to_string(Flag f) {
  switch (f) {
    case Flag::pass: return "pass";
    case Flag::warn: return "warn";
    case Flag::fail: return "fail";
  }
  return "fail";
}

Flag flag_for_ratio(double ratio, double warn_above, double fail_above) {
  if (!(ratio <= fail_above)) return Flag::fail;  // NaN and inf land here
  if (ratio > warn_above) return Flag::warn;
  return Flag::pass;
}

bool HierarchyReport::any_fail() const {
  return std::any_of(checks.begin(), checks.end(),
                     [](const RatioCheck& c) { return c.flag == Flag::fail; });
}

Flag HierarchyReport::worst() const {
  Flag w = Flag::pass;
  for (const auto& c : checks) w = std::max(w, c.flag);
  return w;
}

HierarchyReport validate_hierarchy(const PhysicalParams& p) {
  HierarchyReport r;
  const std::array<std::pair<const char*, double>, 4> ratios{{
      {"n_bar*gamma*tau", p.n_bar * p.gamma * p.tau},
      {"1/(g*tau)", 1.0 / (p.g * p.tau)},
      {"g/kappa", p.g / p.kappa},
      {"kappa/omega_m", p.kappa / p.omega_m},
  }};
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    r.checks[i] = RatioCheck{ratios[i].first, ratios[i].second, flag_for_ratio(ratios[i].second)};
  }
  return r;
}

OperatingPoint operating_point(const DimensionlessParams& d, double omega_m, double g0,
                               std::optional<double> wavelength, RateConvention convention) {
  d.validate();
  require_positive(omega_m, "omega_m");
  require_positive(g0, "g0");
  OperatingPoint op;
  op.convention = convention;
  op.kappa = d.eta * omega_m;
  op.g = d.xi * op.kappa;
  op.gamma = omega_m / d.Q;
  const double tau_angular = d.epsilon / op.gamma;
  op.tau = convention == RateConvention::angular ? tau_angular : constants::two_pi * tau_angular;
  // N_ph is the same in both conventions: the 2π in τ cancels the one in the rates.
  op.n_ph = photons_for_coupling(op.g, g0, op.kappa, omega_m, tau_angular);
  op.power = mean_power(op.n_ph, op.tau, wavelength);
  return op;
}

}  // namespace pulsent
