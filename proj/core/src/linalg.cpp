#include "pulsent/linalg.hpp"

#include <cmath>

#include <Eigen/LU>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "pulsent/errors.hpp"

namespace pulsent::linalg {

cplx expm1(cplx z) {
  const double x = z.real();
  const double y = z.imag();
  const double s = std::sin(0.5 * y);
  // Re: e^x cos y − 1 = expm1(x)·cos y − 2 sin²(y/2)
  return {std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y)};
}

cplx phi1(cplx z) {
  if (std::abs(z) < 1e-8) return 1.0 + 0.5 * z;
  return expm1(z) / z;
}

Eigen::MatrixXd expm(const Eigen::MatrixXd& a) { return a.exp(); }

TransitionWithNoise van_loan(const Eigen::MatrixXd& f, const Eigen::MatrixXd& d, double t,
                             bool symmetric) {
  const Eigen::Index n = f.rows();
  if (f.cols() != n || d.rows() != n || d.cols() != n)
    throw ContractViolation("van_loan: dimension mismatch");
  if (t < 0.0) throw DomainError("van_loan: negative time");

  const double scale = std::max(f.cwiseAbs().maxCoeff(), d.cwiseAbs().maxCoeff()) * t;
  int doublings = 0;
  if (scale > 0.5) doublings = static_cast<int>(std::ceil(std::log2(scale / 0.5)));
  const double h = std::ldexp(t, -doublings);

  Eigen::MatrixXd block = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  block.topLeftCorner(n, n) = -f * h;
  block.topRightCorner(n, n) = d * h;
  block.bottomRightCorner(n, n) = f.transpose() * h;
  const Eigen::MatrixXd e = expm(block);

  Eigen::MatrixXd phi = e.bottomRightCorner(n, n).transpose();
  Eigen::MatrixXd q = phi * e.topRightCorner(n, n);
  if (symmetric) q = 0.5 * (q + q.transpose()).eval();
  for (int k = 0; k < doublings; ++k) {
    q = (phi * q * phi.transpose() + q).eval();
    phi = (phi * phi).eval();
  }
  if (symmetric) q = 0.5 * (q + q.transpose()).eval();
  return {std::move(phi), std::move(q)};
}

Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& a, const Eigen::MatrixXd& n) {
  const Eigen::Index dim = a.rows();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(dim, dim);
  // vec(AX + XAᵀ) = (I⊗A + A⊗I) vec(X) for column-major vec.
  const Eigen::MatrixXd op = Eigen::kroneckerProduct(id, a) + Eigen::kroneckerProduct(a, id);
  const Eigen::VectorXd rhs = -Eigen::Map<const Eigen::VectorXd>(n.data(), n.size());
  Eigen::FullPivLU<Eigen::MatrixXd> lu(op);
  if (!lu.isInvertible()) throw NumericalError("Lyapunov operator is singular");
  Eigen::VectorXd x = lu.solve(rhs);
  Eigen::MatrixXd out = Eigen::Map<Eigen::MatrixXd>(x.data(), dim, dim);
  return 0.5 * (out + out.transpose());
}

}  // namespace pulsent::linalg
