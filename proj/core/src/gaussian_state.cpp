#include "pulsent/gaussian_state.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

namespace pulsent {

GaussianState GaussianState::vacuum() { return GaussianState{}; }

GaussianState GaussianState::thermal(double n_mechanics, double n_light) {
  GaussianState s;
  s.cov.diagonal() << n_mechanics + 0.5, n_mechanics + 0.5, n_light + 0.5, n_light + 0.5;
  return s;
}

Mat4 symplectic_form() {
  Mat4 o = Mat4::Zero();
  o(0, 1) = 1.0;
  o(1, 0) = -1.0;
  o(2, 3) = 1.0;
  o(3, 2) = -1.0;
  return o;
}

Mat4 partial_transpose(const Mat4& cov) {
  Mat4 flip = Mat4::Identity();
  flip(3, 3) = -1.0;
  return flip * cov * flip;
}

std::array<double, 2> symplectic_eigenvalues(const Mat4& cov) {
  // Ωσ has eigenvalues ±iν_k. Going through the eigenproblem rather than the
  // two-mode invariants keeps ν₋ accurate for strongly squeezed, nearly pure
  // states, where Δ² − 4 det σ cancels catastrophically.
  const Eigen::Vector4cd ev = Eigen::EigenSolver<Mat4>(symplectic_form() * cov, false).eigenvalues();
  std::array<double, 4> nu;
  for (int k = 0; k < 4; ++k) nu[k] = std::abs(ev(k).imag());
  std::sort(nu.begin(), nu.end());
  // Each ν appears twice.
  return {0.5 * (nu[0] + nu[1]), 0.5 * (nu[2] + nu[3])};
}

double min_pt_symplectic_eigenvalue(const Mat4& cov) {
  return symplectic_eigenvalues(partial_transpose(cov))[0];
}

bool is_symmetric(const Mat4& m, double rel_tol) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.transpose()).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

bool satisfies_uncertainty(const Mat4& cov, double tol) {
  if (cov(0, 0) <= 0.0 || cov(2, 2) <= 0.0) return false;
  if (cov.topLeftCorner<2, 2>().determinant() < 0.25 - tol) return false;
  if (cov.bottomRightCorner<2, 2>().determinant() < 0.25 - tol) return false;
  return symplectic_eigenvalues(cov)[0] - 0.5 >= -tol;
}

bool is_symplectic(const Mat4& s, double tol) {
  const Mat4 omega = symplectic_form();
  return (s * omega * s.transpose() - omega).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace pulsent
