#pragma once

#include <cmath>
#include <random>

#include "pulsent/params.hpp"

namespace testing {

inline bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-300});
}

// Reference row 1 in SI angular units.
inline pulsent::PhysicalParams table1_row1() {
  using pulsent::constants::two_pi;
  pulsent::PhysicalParams p;
  p.omega_m = two_pi * 3.8e6;
  p.gamma = p.omega_m / 1e5;
  p.kappa = two_pi * 3.2e6;
  p.g = two_pi * 0.97e6;
  p.g0 = two_pi * 4.8;
  p.detuning = -p.omega_m;
  p.tau = 2.5e-6;
  p.n_bar = 1100.0;
  p.n0 = 0.0;
  return p;
}

inline std::mt19937_64 rng(unsigned long seed = 20121016) { return std::mt19937_64(seed); }

inline double log_uniform(std::mt19937_64& g, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(g));
}

}  // namespace testing
