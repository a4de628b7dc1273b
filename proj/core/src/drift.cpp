#include "pulsent/drift.hpp"

#include <cmath>

#include "pulsent/errors.hpp"

namespace pulsent {

Eigen::Matrix<double, 4, 2> DriftModel::input_coupling() const {
  Eigen::Matrix<double, 4, 2> b = Eigen::Matrix<double, 4, 2>::Zero();
  b(2, 0) = -std::sqrt(2.0 * kappa);
  b(3, 1) = -std::sqrt(2.0 * kappa);
  return b;
}

DriftModel build_drift(const PhysicalParams& p, bool include_gamma) {
  if (!(p.omega_m > 0.0) || !(p.kappa > 0.0) || !(p.g >= 0.0) || !std::isfinite(p.detuning))
    throw DomainError("build_drift: need omega_m > 0, kappa > 0, g >= 0 and finite detuning");
  if (include_gamma && (!(p.gamma >= 0.0) || !(p.n_bar >= 0.0)))
    throw DomainError("build_drift: need gamma >= 0 and n_bar >= 0");
  DriftModel m;
  m.gamma_included = include_gamma;
  m.omega_m = p.omega_m;
  m.kappa = p.kappa;
  m.detuning = p.detuning;
  m.g = p.g;

  const double w = p.omega_m;
  const double k = p.kappa;
  const double d = p.detuning;
  const double g2 = 2.0 * p.g;
  const double damping = include_gamma ? p.gamma : 0.0;
  // clang-format off
  m.A <<  0.0,  w,        0.0,  0.0,
         -w,   -damping, -g2,   0.0,
          0.0,  0.0,     -k,    d,
         -g2,   0.0,     -d,   -k;
  // clang-format on

  m.N(2, 2) = k;
  m.N(3, 3) = k;
  if (include_gamma) m.N(1, 1) = p.gamma * (2.0 * p.n_bar + 1.0);
  return m;
}

}  // namespace pulsent
