#include "pulsent/steady_state.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "pulsent/errors.hpp"
#include "pulsent/linalg.hpp"
#include "pulsent/metrics.hpp"

namespace pulsent {

double spectral_abscissa(const Mat4& a) {
  return Eigen::EigenSolver<Mat4>(a, false).eigenvalues().real().maxCoeff();
}

GaussianState cw_steady_state(const DriftModel& drift) {
  const Eigen::Vector4cd ev = Eigen::EigenSolver<Mat4>(drift.A, false).eigenvalues();
  for (int j = 0; j < 4; ++j) {
    if (ev(j).real() >= 0.0) {
      std::ostringstream os;
      os << "cw_steady_state: drift is unstable, eigenvalue " << ev(j).real()
         << (ev(j).imag() < 0 ? " - " : " + ") << std::abs(ev(j).imag()) << "i";
      throw NumericalError(os.str());
    }
  }
  GaussianState s;
  s.cov = linalg::solve_lyapunov(drift.A, drift.N);
  return s;
}

double instability_threshold(PhysicalParams p, double g_max) {
  auto unstable = [&p](double g) {
    p.g = g;
    return spectral_abscissa(build_drift(p, true).A) >= 0.0;
  };
  if (!unstable(g_max)) return g_max;
  double lo = 0.0;
  double hi = g_max;
  for (int i = 0; i < 200 && hi - lo > 1e-12 * g_max; ++i) {
    const double mid = 0.5 * (lo + hi);
    (unstable(mid) ? hi : lo) = mid;
  }
  return lo;
}

CwScanResult cw_negativity_scan(const PhysicalParams& p, double det_lo, double det_hi,
                                int detuning_points, int coupling_points) {
  if (!(det_hi > det_lo) || detuning_points < 2 || coupling_points < 2)
    throw DomainError("cw_negativity_scan: invalid scan ranges");
  CwScanResult best;
  best.log_negativity = -1.0;
  PhysicalParams q = p;
  const double g_max = 4.0 * p.omega_m;
  for (int i = 0; i < detuning_points; ++i) {
    q.detuning = det_lo + (det_hi - det_lo) * i / (detuning_points - 1);
    const double gc = instability_threshold(q, g_max);
    for (int k = 1; k < coupling_points; ++k) {
      q.g = gc * k / coupling_points;
      const DriftModel d = build_drift(q, true);
      if (spectral_abscissa(d.A) >= 0.0) continue;
      const GaussianState st = cw_steady_state(d);
      const double en = log_negativity(st, 1e-7);
      if (en > best.log_negativity) {
        best.log_negativity = en;
        best.detuning = q.detuning;
        best.g = q.g;
        best.g_threshold = gc;
        best.state = st;
      }
    }
  }
  if (best.log_negativity < 0.0) throw NumericalError("cw_negativity_scan: no stable point found");
  return best;
}

}  // namespace pulsent
