#include "pulsent/covariance_ode.hpp"

#include <cmath>
#include <vector>

#include "adaptive.hpp"
#include "pulsent/errors.hpp"

namespace pulsent {
namespace {

void integrate(auto sys, detail::OdeState& x, double t_end, const OdeOptions& opt) {
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw DomainError("ODE: t must be finite and >= 0");
  if (t_end == 0.0) return;
  auto stepper = detail::make_rkf78(opt.abs_tol, opt.rel_tol);
  double dt = t_end / 100.0;
  detail::advance(stepper, sys, x, 0.0, t_end, dt, opt.max_steps, "covariance ODE");
}

}  // namespace

Eigen::MatrixXd ode_propagator(const Eigen::MatrixXd& a, double t, const OdeOptions& opt) {
  const Eigen::Index n = a.rows();
  detail::OdeState x(static_cast<std::size_t>(n * n), 0.0);
  Eigen::Map<Eigen::MatrixXd>(x.data(), n, n).setIdentity();
  auto sys = [&a, n](const detail::OdeState& s, detail::OdeState& ds, double) {
    Eigen::Map<const Eigen::MatrixXd> m(s.data(), n, n);
    Eigen::Map<Eigen::MatrixXd>(ds.data(), n, n).noalias() = a * m;
  };
  integrate(sys, x, t, opt);
  return Eigen::Map<Eigen::MatrixXd>(x.data(), n, n);
}

Eigen::MatrixXd ode_covariance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& n,
                               const Eigen::MatrixXd& cov0, double t, const OdeOptions& opt) {
  const Eigen::Index d = a.rows();
  if (a.cols() != d || n.rows() != d || n.cols() != d || cov0.rows() != d || cov0.cols() != d)
    throw ContractViolation("ode_covariance: dimension mismatch");
  detail::OdeState x(cov0.data(), cov0.data() + cov0.size());
  auto sys = [&a, &n, d](const detail::OdeState& s, detail::OdeState& ds, double) {
    Eigen::Map<const Eigen::MatrixXd> sig(s.data(), d, d);
    Eigen::Map<Eigen::MatrixXd> out(ds.data(), d, d);
    out.noalias() = a * sig;
    out += out.transpose().eval();
    out += n;
  };
  integrate(sys, x, t, opt);
  Eigen::MatrixXd sig = Eigen::Map<Eigen::MatrixXd>(x.data(), d, d);
  return 0.5 * (sig + sig.transpose());
}

GaussianState covariance_ode_oracle(const DriftModel& drift, const GaussianState& state0, double t,
                                    const OdeOptions& opt) {
  GaussianState out;
  out.cov = ode_covariance(drift.A, drift.N, state0.cov, t, opt);
  out.mean = ode_propagator(drift.A, t, opt) * state0.mean;
  return out;
}

}  // namespace pulsent
