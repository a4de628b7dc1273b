#include "pulsent/ideal_model.hpp"

#include <cmath>
#include <string>

#include "pulsent/errors.hpp"

namespace pulsent {
namespace {

void require_nonnegative(double v, const char* name) {
  if (!(v >= 0.0)) throw DomainError(std::string(name) + " must be >= 0");
}

// e^r − sqrt(e^{2r}−1) without cancellation.
double squeezed_residual(double r) { return 1.0 / (std::exp(r) + std::sqrt(std::expm1(2.0 * r))); }

}  // namespace

Eigen::Matrix4d TwoModeSqueezeMap::quadrature_matrix() const {
  const double c = cosh_like;
  const double s = sinh_like;
  Eigen::Matrix4d m;
  // clang-format off
  m <<  c,  0,  0,  s,
        0,  c,  s,  0,
        0, -s, -c,  0,
       -s,  0,  0, -c;
  // clang-format on
  return m;
}

Eigen::Matrix4d SwapMap::quadrature_matrix() const {
  const double t = transmit;
  const double w = swap;
  Eigen::Matrix4d m;
  // clang-format off
  m <<  t,  0,  0,  w,
        0,  t, -w,  0,
        0, -w, -t,  0,
        w,  0,  0, -t;
  // clang-format on
  return m;
}

double epr_variance_ideal(double r, double n0) {
  require_nonnegative(r, "r");
  require_nonnegative(n0, "n0");
  const double d = squeezed_residual(r);
  return 2.0 * (n0 + 1.0) * d * d;
}

double squeezing_threshold(double n0) {
  require_nonnegative(n0, "n0");
  // (n0+2)²/(4(n0+1)) = 1 + n0²/(4(n0+1)); log1p keeps small n0 accurate.
  // n0·(n0/(4(n0+1))) avoids overflowing n0² for huge occupations.
  return 0.5 * std::log1p(n0 * (n0 / (4.0 * (n0 + 1.0))));
}

TwoModeSqueezeMap entangle_map(double r) {
  require_nonnegative(r, "r");
  return TwoModeSqueezeMap{r, std::exp(r), std::sqrt(std::expm1(2.0 * r))};
}

SwapMap swap_map(double g_tau) {
  require_nonnegative(g_tau, "G*tau");
  return SwapMap{std::exp(-g_tau), std::sqrt(-std::expm1(-2.0 * g_tau))};
}

AddedNoise teleport_added_noise(double r, double n0) {
  const double half = 0.5 * epr_variance_ideal(r, n0);
  return AddedNoise{half, half};
}

double coherent_fidelity(double delta_epr) {
  if (!(delta_epr >= 0.0)) throw DomainError("delta_epr must be >= 0");
  return 1.0 / (1.0 + 0.5 * delta_epr);
}

}  // namespace pulsent
