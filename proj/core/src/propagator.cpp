#include "pulsent/propagator.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include "pulsent/errors.hpp"
#include "pulsent/linalg.hpp"
#include "pulsent/logging.hpp"

namespace pulsent {

using cplx = std::complex<double>;

Propagator::Propagator(const Mat4& system_matrix, double condition_threshold) : a_(system_matrix) {
  if (!a_.allFinite()) throw DomainError("Propagator: system matrix has non-finite entries");
  Eigen::EigenSolver<Mat4> es(a_);
  if (es.info() != Eigen::Success) {
    modal_ = false;
    condition_ = std::numeric_limits<double>::infinity();
  } else {
    lambda_ = es.eigenvalues();
    v_ = es.eigenvectors();
    for (int j = 0; j < 4; ++j) v_.col(j).normalize();
    Eigen::JacobiSVD<Eigen::Matrix4cd> svd(v_);
    const auto& sv = svd.singularValues();
    condition_ = sv(3) > 0.0 ? sv(0) / sv(3) : std::numeric_limits<double>::infinity();
    modal_ = condition_ <= condition_threshold;
    if (modal_) v_inv_ = v_.inverse();
  }
  if (!modal_) {
    std::ostringstream os;
    os << "propagator: eigenvector condition number " << condition_
       << " exceeds threshold; using matrix exponential";
    log(LogLevel::warning, os.str());
  }
}

Eigen::Matrix4cd Propagator::projector(int j) const {
  return v_.col(j) * v_inv_.row(j);
}

Mat4 Propagator::evaluate(double t) const {
  if (t < 0.0) throw DomainError("Propagator::evaluate: t must be >= 0");
  if (!modal_) return linalg::expm(a_ * t);
  Eigen::Vector4cd e;
  for (int j = 0; j < 4; ++j) e(j) = std::exp(lambda_(j) * t);
  return (v_ * e.asDiagonal() * v_inv_).real();
}

Mat4 Propagator::noise_integral(const Mat4& q, double t) const {
  if (t < 0.0) throw DomainError("Propagator::noise_integral: t must be >= 0");
  if (!modal_) return linalg::van_loan(a_, q, t).noise;
  // V [W ∘ H] Vᵀ with W = V⁻¹ Q V⁻ᵀ and H_jk = ∫₀ᵗ e^{(λ_j+λ_k)s} ds.
  Eigen::Matrix4cd w = v_inv_ * q.cast<cplx>() * v_inv_.transpose();
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) w(j, k) *= t * linalg::phi1((lambda_(j) + lambda_(k)) * t);
  Mat4 out = (v_ * w * v_.transpose()).real();
  return 0.5 * (out + out.transpose());
}

Eigen::Matrix4cd Propagator::noise_integral(const Eigen::Matrix4cd& q, double t) const {
  if (t < 0.0) throw DomainError("Propagator::noise_integral: t must be >= 0");
  if (!modal_) {
    const Mat4 re = linalg::van_loan(a_, q.real(), t, false).noise;
    const Mat4 im = linalg::van_loan(a_, q.imag(), t, false).noise;
    return re.cast<cplx>() + cplx(0, 1) * im.cast<cplx>();
  }
  Eigen::Matrix4cd w = v_inv_ * q * v_inv_.transpose();
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) w(j, k) *= t * linalg::phi1((lambda_(j) + lambda_(k)) * t);
  return v_ * w * v_.transpose();
}

Eigen::Matrix4cd Propagator::exponential_integral(cplx rho, double t) const {
  if (t < 0.0) throw DomainError("Propagator::exponential_integral: t must be >= 0");
  if (modal_) {
    Eigen::Vector4cd h;
    for (int j = 0; j < 4; ++j) h(j) = t * linalg::phi1((lambda_(j) + rho) * t);
    return v_ * h.asDiagonal() * v_inv_;
  }
  // Block exponential of [[A+ρ, I], [0, 0]]·t carries ∫₀ᵗ e^{(A+ρ)s} ds in its corner.
  // Real 16×16 embedding of the complex 8×8 problem.
  Eigen::Matrix<cplx, 8, 8> blk = Eigen::Matrix<cplx, 8, 8>::Zero();
  blk.topLeftCorner<4, 4>() = (a_.cast<cplx>() + rho * Eigen::Matrix4cd::Identity()) * t;
  blk.topRightCorner<4, 4>() = Eigen::Matrix4cd::Identity() * t;
  Eigen::MatrixXd real_blk(16, 16);
  real_blk << blk.real(), -blk.imag(), blk.imag(), blk.real();
  const Eigen::MatrixXd e = linalg::expm(real_blk);
  Eigen::Matrix4cd out;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out(r, c) = cplx(e(r, 4 + c), e(8 + r, 4 + c));
  return out;
}

Mat4 Propagator::covariance(const Mat4& cov0, const Mat4& diffusion, double t) const {
  const Mat4 m = evaluate(t);
  Mat4 out = m * cov0 * m.transpose() + noise_integral(diffusion, t);
  return 0.5 * (out + out.transpose());
}

}  // namespace pulsent
