#pragma once

#include <complex>

#include <Eigen/Core>

#include "pulsent/gaussian_state.hpp"

namespace pulsent {

/// M(t) = e^{At}, the inverse Laplace transform of the resolvent (s − A)⁻¹.
///
/// Generic drift matrices have simple poles, so M(t) is assembled from the
/// eigendecomposition A = V Λ V⁻¹. When the eigenvector basis is
/// ill-conditioned (cond(V) > threshold) the propagator switches to a
/// scaling-and-squaring matrix exponential and logs the switch.
class Propagator {
 public:
  static constexpr double default_condition_threshold = 1e8;

  explicit Propagator(const Mat4& system_matrix,
                      double condition_threshold = default_condition_threshold);

  Mat4 evaluate(double t) const;

  /// ∫₀ᵗ M(s) Q M(s)ᵀ ds for symmetric Q.
  Mat4 noise_integral(const Mat4& q, double t) const;

  /// ∫₀ᵗ M(s) Q M(s)ᵀ ds for complex Q, no symmetry assumed.
  Eigen::Matrix4cd noise_integral(const Eigen::Matrix4cd& q, double t) const;

  /// ∫₀ᵗ e^{ρs} M(s) ds, complex-valued.
  Eigen::Matrix4cd exponential_integral(std::complex<double> rho, double t) const;

  /// Covariance at t: M σ₀ Mᵀ + ∫₀ᵗ M N Mᵀ ds.
  Mat4 covariance(const Mat4& cov0, const Mat4& diffusion, double t) const;

  bool modal() const { return modal_; }
  double condition_number() const { return condition_; }
  const Eigen::Vector4cd& eigenvalues() const { return lambda_; }
  const Mat4& system_matrix() const { return a_; }

  /// Rank-one spectral projector P_j = v_j w_jᵀ, M(t) = Σ_j P_j e^{λ_j t}.
  /// Only meaningful when modal().
  Eigen::Matrix4cd projector(int j) const;

 private:
  Mat4 a_;
  Eigen::Vector4cd lambda_;
  Eigen::Matrix4cd v_;
  Eigen::Matrix4cd v_inv_;
  double condition_ = 1.0;
  bool modal_ = true;
};

}  // namespace pulsent
