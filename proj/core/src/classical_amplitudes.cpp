#include "pulsent/classical_amplitudes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "adaptive.hpp"
#include "pulsent/errors.hpp"

namespace pulsent {

using cplx = std::complex<double>;

namespace {

double drive_amplitude(const PhysicalParams& p, double n_ph) {
  if (!(n_ph >= 0.0) || !std::isfinite(n_ph)) throw DomainError("photon number must be >= 0");
  if (!(p.kappa > 0.0) || !(p.omega_m > 0.0) || !(p.g0 >= 0.0))
    throw DomainError("amplitudes need kappa > 0, omega_m > 0 and g0 >= 0");
  return std::sqrt(2.0 * p.kappa * n_ph);
}

std::vector<double> uniform_times(double tau, int intervals) {
  if (intervals < 1) throw DomainError("need at least one sample interval");
  std::vector<double> t(intervals + 1);
  for (int i = 0; i <= intervals; ++i) t[i] = tau * static_cast<double>(i) / intervals;
  return t;
}

void fill_plateau_stats(const PulseEnvelope& env, AmplitudeSolution& s, double kappa) {
  s.delta_bound = env.max_slope() / (kappa * env.plateau());
  const double t0 = env.ramp_time();
  const double t1 = env.tau() - env.ramp_time();
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < s.t.size(); ++i)
    if (s.t[i] >= t0 && s.t[i] <= t1) lo = std::min(lo, std::abs(s.alpha[i]));
  s.min_plateau_alpha = std::isfinite(lo) ? lo : 0.0;
}

}  // namespace

PulseEnvelope::PulseEnvelope(Shape s, double tau, double ramp_fraction)
    : shape_(s), tau_(tau), ramp_fraction_(ramp_fraction), amplitude_(0.0) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw DomainError("PulseEnvelope: tau must be > 0");
  if (s == Shape::flat_top && !(ramp_fraction > 0.0 && ramp_fraction <= 0.5))
    throw DomainError("PulseEnvelope: ramp_fraction must lie in (0, 0.5]");
  // ∫ sin⁴ over one ramp is 3/8 of its length.
  const double effective = s == Shape::step ? tau : tau - 1.25 * ramp_fraction * tau;
  amplitude_ = 1.0 / std::sqrt(effective);
}

PulseEnvelope PulseEnvelope::flat_top(double tau, double ramp_fraction) {
  return PulseEnvelope(Shape::flat_top, tau, ramp_fraction);
}

PulseEnvelope PulseEnvelope::step(double tau) { return PulseEnvelope(Shape::step, tau, 0.0); }

double PulseEnvelope::value(double t) const {
  if (t < 0.0 || t > tau_) return 0.0;
  if (shape_ == Shape::step) return amplitude_;
  const double tr = ramp_time();
  const double edge = std::min(t, tau_ - t);
  if (edge >= tr) return amplitude_;
  const double s = std::sin(0.5 * constants::pi * edge / tr);
  return amplitude_ * s * s;
}

double PulseEnvelope::derivative(double t) const {
  if (shape_ == Shape::step || t < 0.0 || t > tau_) return 0.0;
  const double tr = ramp_time();
  const bool head = t <= tau_ - t;
  const double edge = head ? t : tau_ - t;
  if (edge >= tr) return 0.0;
  const double d = amplitude_ * 0.5 * constants::pi / tr * std::sin(constants::pi * edge / tr);
  return head ? d : -d;
}

double PulseEnvelope::max_slope() const {
  if (shape_ == Shape::step) return std::numeric_limits<double>::infinity();
  return amplitude_ * 0.5 * constants::pi / ramp_time();
}

std::vector<double> PulseEnvelope::sample_times(int intervals) const {
  return uniform_times(tau_, intervals);
}

std::vector<double> PulseEnvelope::sample_values(int intervals) const {
  std::vector<double> t = sample_times(intervals);
  for (double& v : t) v = value(v);
  return t;
}

AmplitudeSolution solve_amplitudes(const PhysicalParams& p, double n_ph,
                                   const PulseEnvelope& envelope, const AmplitudeOptions& opt) {
  const double e0 = drive_amplitude(p, n_ph);
  const double kappa = p.kappa;
  const double delta0 = p.detuning;
  const double om = p.omega_m;
  const double g0 = p.g0;
  const bool locked = opt.locked_detuning;

  auto sys = [&](const detail::OdeState& x, detail::OdeState& dx, double t) {
    const cplx a(x[0], x[1]);
    const cplx b(x[2], x[3]);
    const double det = locked ? delta0 : delta0 + 2.0 * g0 * b.real();
    const cplx da = -cplx(kappa, det) * a + e0 * envelope.value(t);
    const cplx db = cplx(0.0, -om) * b - cplx(0.0, g0 * std::norm(a));
    dx[0] = da.real();
    dx[1] = da.imag();
    dx[2] = db.real();
    dx[3] = db.imag();
  };

  AmplitudeSolution s;
  s.t = uniform_times(envelope.tau(), opt.samples);
  s.alpha.assign(s.t.size(), 0.0);
  s.beta.assign(s.t.size(), 0.0);
  s.delta_eff.assign(s.t.size(), delta0);

  const double scale =
      std::max(1.0, e0 * envelope.plateau() / std::abs(cplx(kappa, delta0)));
  auto stepper = detail::make_rkf78(opt.abs_tol * scale, opt.rel_tol);
  detail::OdeState x(4, 0.0);
  // Resolve the fastest of the cavity and mechanical timescales on the first step.
  double dt = 0.01 / std::max({kappa, om, std::abs(delta0)});
  for (std::size_t i = 1; i < s.t.size(); ++i) {
    detail::advance(stepper, sys, x, s.t[i - 1], s.t[i], dt, 50'000'000, "solve_amplitudes");
    if (dt <= 0.0) dt = (s.t[i] - s.t[i - 1]) * 0.1;
    s.alpha[i] = cplx(x[0], x[1]);
    s.beta[i] = cplx(x[2], x[3]);
    s.delta_eff[i] = locked ? delta0 : delta0 + 2.0 * g0 * x[2];
  }
  fill_plateau_stats(envelope, s, kappa);
  return s;
}

AmplitudeSolution adiabatic_amplitudes(const PhysicalParams& p, double n_ph,
                                       const PulseEnvelope& envelope,
                                       const AmplitudeOptions& opt) {
  const double e0 = drive_amplitude(p, n_ph);
  AmplitudeSolution s;
  s.t = uniform_times(envelope.tau(), opt.samples);
  s.alpha.resize(s.t.size());
  s.beta.resize(s.t.size());
  s.delta_eff.resize(s.t.size());
  const double c = 2.0 * p.g0 * p.g0 / p.omega_m;
  for (std::size_t i = 0; i < s.t.size(); ++i) {
    const double e = e0 * envelope.value(s.t[i]);
    double det = p.detuning;
    if (!opt.locked_detuning && c > 0.0 && e != 0.0) {
      // Δ = Δ0 − c·E²/(Δ² + κ²): fixed point near Δ0, refined by Newton.
      for (int it = 0; it < 100; ++it) {
        const double den = det * det + p.kappa * p.kappa;
        const double f = det - p.detuning + c * e * e / den;
        const double df = 1.0 - 2.0 * c * e * e * det / (den * den);
        const double step = f / df;
        det -= step;
        if (std::abs(step) <= 1e-15 * std::abs(det)) break;
      }
    }
    const cplx a = e / cplx(p.kappa, det);
    s.alpha[i] = a;
    s.beta[i] = -(p.g0 / p.omega_m) * std::norm(a);
    // The unlocked detuning is shifted by the mirror displacement; a locked
    // laser tracks it, so the shift is already absorbed.
    s.delta_eff[i] = opt.locked_detuning ? p.detuning : p.detuning - c * std::norm(a);
  }
  fill_plateau_stats(envelope, s, p.kappa);
  return s;
}

double plateau_deviation(const AmplitudeSolution& exact, const AmplitudeSolution& adiabatic,
                         const PulseEnvelope& envelope) {
  if (exact.t.size() != adiabatic.t.size())
    throw DomainError("plateau_deviation: trajectories sampled differently");
  const double lo = envelope.ramp_time(), hi = envelope.tau() - envelope.ramp_time();
  double worst = 0.0;
  for (std::size_t i = 0; i < exact.t.size(); ++i) {
    if (exact.t[i] < lo || exact.t[i] > hi) continue;
    const double ref = std::abs(adiabatic.alpha[i]);
    if (ref == 0.0) continue;
    worst = std::max(worst, std::abs(exact.alpha[i] - adiabatic.alpha[i]) / ref);
  }
  return worst;
}

double linear_filter_check(const PhysicalParams& p, const PulseEnvelope& envelope, int probes) {
  if (probes < 1) throw DomainError("linear_filter_check: probes must be >= 1");
  PhysicalParams q = p;
  q.g0 = 0.0;
  AmplitudeOptions opt;
  opt.samples = 4 * probes;
  opt.locked_detuning = false;
  opt.rel_tol = 1e-12;
  opt.abs_tol = 1e-14;
  const auto s = solve_amplitudes(q, 1.0, envelope, opt);
  const std::complex<double> z(p.kappa, p.detuning);
  const double e0 = std::sqrt(2.0 * p.kappa);
  using boost::math::quadrature::gauss_kronrod;
  // Integrate piecewise so the ramp joins never fall inside a panel.
  const std::array<double, 4> knots{0.0, envelope.ramp_time(), envelope.tau() - envelope.ramp_time(),
                                    envelope.tau()};
  double worst = 0.0;
  for (std::size_t i = 4; i < s.t.size(); i += 4) {
    const double t = s.t[i];
    std::complex<double> ref = 0.0;
    for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
      const double a = knots[k], b = std::min(knots[k + 1], t);
      if (b <= a) continue;
      // Mapped onto [0, 1]: the error estimate misbehaves on microsecond-wide panels.
      const double w = b - a;
      ref += w * gauss_kronrod<double, 61>::integrate(
                     [&](double x) {
                       const double u = a + w * x;
                       return std::exp(z * (u - t)) * e0 * envelope.value(u);
                     },
                     0.0, 1.0, 12, 1e-12);
    }
    worst = std::max(worst, std::abs(s.alpha[i] - ref) / std::abs(ref));
  }
  return worst;
}

Flag EnvelopeReport::worst() const {
  return std::max({delta_bound.flag, slow_variation.flag, cavity_response.flag});
}

EnvelopeReport validate_envelope(const PhysicalParams& p, const PulseEnvelope& envelope) {
  if (!(p.kappa > 0.0) || !(p.omega_m > 0.0))
    throw DomainError("validate_envelope: kappa and omega_m must be > 0");
  EnvelopeReport r;
  const double delta = envelope.max_slope() / (p.kappa * envelope.plateau());
  // Adiabatically |α|² ∝ ε², whose steepest sin⁴ slope is (3√3π/8)/t_r.
  const double slow = envelope.shape() == PulseEnvelope::Shape::step
                          ? std::numeric_limits<double>::infinity()
                          : 3.0 * std::sqrt(3.0) * constants::pi / 8.0 /
                                (p.omega_m * envelope.ramp_time());
  const double response = 1.0 / (p.kappa * envelope.tau());
  r.delta_bound = {"delta_bound", delta, flag_for_ratio(delta, 0.1, 1.0)};
  r.slow_variation = {"slow_variation", slow, flag_for_ratio(slow, 0.1, 1.0)};
  r.cavity_response = {"1/(kappa*tau)", response, flag_for_ratio(response, 0.1, 1.0)};
  return r;
}

}  // namespace pulsent
