#pragma once

#include <array>

#include <Eigen/Core>

namespace pulsent {

using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;

/// Bipartite Gaussian state over (X_m, P_m, X_l, P_l); vacuum variance 1/2.
struct GaussianState {
  Vec4 mean = Vec4::Zero();
  Mat4 cov = 0.5 * Mat4::Identity();

  static GaussianState vacuum();
  /// Uncorrelated thermal states with the given mean occupations.
  static GaussianState thermal(double n_mechanics, double n_light);
};

/// Ω = diag(J, J), J = [[0, 1], [−1, 0]].
Mat4 symplectic_form();

/// Flips P_l; the partial transpose of the light mode.
Mat4 partial_transpose(const Mat4& cov);

/// Symplectic eigenvalues (ν₋, ν₊), ascending.
std::array<double, 2> symplectic_eigenvalues(const Mat4& cov);

/// Smallest symplectic eigenvalue of the partially transposed covariance.
double min_pt_symplectic_eigenvalue(const Mat4& cov);

bool is_symmetric(const Mat4& m, double rel_tol = 1e-12);

/// ν₋ − 1/2 >= −tol, together with positivity of the single-mode blocks.
bool satisfies_uncertainty(const Mat4& cov, double tol = 1e-9);

/// ‖SΩSᵀ − Ω‖_max <= tol.
bool is_symplectic(const Mat4& s, double tol = 1e-10);

}  // namespace pulsent
