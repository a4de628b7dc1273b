#pragma once

#include <complex>

#include <Eigen/Core>

namespace pulsent::linalg {

using cplx = std::complex<double>;

/// e^z − 1 for complex z, accurate near zero.
cplx expm1(cplx z);

/// φ₁(z) = (e^z − 1)/z with φ₁(0) = 1.
cplx phi1(cplx z);

/// Matrix exponential (scaling and squaring with Padé approximants).
Eigen::MatrixXd expm(const Eigen::MatrixXd& a);

/// Transition matrix and accumulated diffusion of ẋ = F x + noise with
/// diffusion matrix D over time t:
///   Φ = e^{Ft},  Q = ∫₀ᵗ e^{Fs} D e^{Fᵀs} ds.
/// Van Loan's block exponential on a short step, then doubling up to t. The
/// doubling avoids forming e^{−Ft}, which overflows for strongly damped modes.
struct TransitionWithNoise {
  Eigen::MatrixXd transition;
  Eigen::MatrixXd noise;
};

/// D need not be symmetric; pass symmetric = false to skip the final symmetrization.
TransitionWithNoise van_loan(const Eigen::MatrixXd& f, const Eigen::MatrixXd& d, double t,
                             bool symmetric = true);

/// Solves A X + X Aᵀ + N = 0 for square A by Kronecker vectorization.
Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& a, const Eigen::MatrixXd& n);

}  // namespace pulsent::linalg
