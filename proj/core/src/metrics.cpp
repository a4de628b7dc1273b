#include "pulsent/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pulsent/errors.hpp"
#include "pulsent/ideal_model.hpp"

namespace pulsent {
namespace {

void require_symmetric(const Mat4& cov) {
  if (!cov.allFinite()) throw DomainError("covariance has non-finite entries");
  if (!is_symmetric(cov)) throw DomainError("covariance is not symmetric");
}

}  // namespace

double epr_variance(const GaussianState& state) {
  require_symmetric(state.cov);
  const Vec4 u(1.0, 0.0, 0.0, 1.0);  // X_m + P_l
  const Vec4 v(0.0, 1.0, 1.0, 0.0);  // P_m + X_l
  return u.dot(state.cov * u) + v.dot(state.cov * v);
}

double log_negativity(const GaussianState& state, double tol) {
  require_symmetric(state.cov);
  const double nu = symplectic_eigenvalues(state.cov)[0];
  if (!satisfies_uncertainty(state.cov, tol)) {
    std::ostringstream os;
    os << "covariance violates the uncertainty relation (nu_min - 1/2 = " << nu - 0.5 << ")";
    throw DomainError(os.str());
  }
  const double nu_pt = min_pt_symplectic_eigenvalue(state.cov);
  if (nu_pt <= 0.0) throw NumericalError("partially transposed covariance is singular");
  return std::max(0.0, -std::log(2.0 * nu_pt));
}

double teleport_fidelity(const GaussianState& state) { return coherent_fidelity(epr_variance(state)); }

EntanglementReport entanglement_report(const GaussianState& state, double tol) {
  EntanglementReport r;
  r.delta_epr = epr_variance(state);
  r.log_negativity = log_negativity(state, tol);
  r.fidelity = coherent_fidelity(r.delta_epr);
  r.entangled = r.delta_epr < 2.0;
  r.symplectic_eigs = {symplectic_eigenvalues(state.cov)[0], min_pt_symplectic_eigenvalue(state.cov)};
  return r;
}

}  // namespace pulsent
