#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "pulsent/errors.hpp"

namespace pulsent::detail {

using OdeState = std::vector<double>;

// Adaptive RKF78 from t0 to t1, stepping by hand so that a collapsing step or
// a blow-up is reported with the time at which it happened. `dt` carries the
// step size across calls.
template <class Stepper, class System>
void advance(Stepper& stepper, System& sys, OdeState& x, double t0, double t1, double& dt,
             std::size_t max_steps, const char* what) {
  double t = t0;
  std::size_t steps = 0;
  const double floor = 1e-15 * std::max(std::abs(t1), 1e-300);
  while (t < t1) {
    if (t + dt > t1) dt = t1 - t;
    const double before = t;
    const double tried = dt;
    stepper.try_step(sys, x, t, dt);
    if (++steps > max_steps || (t == before && tried < floor)) {
      std::ostringstream os;
      os << what << ": integration stalled at t = " << before << " (step " << tried << ")";
      throw NumericalError(os.str());
    }
    if (!std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); })) {
      std::ostringstream os;
      os << what << ": integration diverged at t = " << t;
      throw NumericalError(os.str());
    }
  }
}

inline auto make_rkf78(double abs_tol, double rel_tol) {
  namespace odeint = boost::numeric::odeint;
  return odeint::make_controlled(abs_tol, rel_tol, odeint::runge_kutta_fehlberg78<OdeState>());
}

}  // namespace pulsent::detail
