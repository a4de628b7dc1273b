#include "pulsent/io_relation.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/LU>

#include "pulsent/errors.hpp"
#include "pulsent/metrics.hpp"
#include "pulsent/params.hpp"
#include "pulsent/propagator.hpp"

namespace pulsent {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

namespace {

constexpr double inv_sqrt2 = 0.70710678118654752440;

// (b, b†) → (x, p) for one mode.
Eigen::Matrix2cd ladder_to_quadrature() {
  Eigen::Matrix2cd u;
  u << inv_sqrt2, inv_sqrt2, cplx(0, -inv_sqrt2), cplx(0, inv_sqrt2);
  return u;
}

Eigen::Matrix4cd ladder_to_quadrature4() {
  Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
  u.topLeftCorner<2, 2>() = ladder_to_quadrature();
  u.bottomRightCorner<2, 2>() = ladder_to_quadrature();
  return u;
}

double norm_on(const TimeGrid& grid, const cvec& f) {
  cvec sq(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) sq[i] = std::norm(f[i]);
  return std::sqrt(std::max(0.0, grid.integrate(sq).real()));
}

// Splits the kernels (k1, k2) of ∫ k1 a_in + k2 a_in† into c5 A₁ + c6 A₂†.
void fold_noise(const TimeGrid& grid, const cvec& k1, const cvec& k2, ModeExpansion& e) {
  const double n1 = norm_on(grid, k1);
  const double n2 = norm_on(grid, k2);
  e.c[4] = n1;
  e.c[5] = n2;
  e.env1.resize(k1.size());
  e.env2.resize(k2.size());
  for (std::size_t i = 0; i < k1.size(); ++i) {
    e.env1[i] = n1 > 0.0 ? std::conj(k1[i]) / n1 : 0.0;
    e.env2[i] = n2 > 0.0 ? k2[i] / n2 : 0.0;
  }
}

}  // namespace

TimeGrid TimeGrid::uniform(double tau, int min_intervals) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw DomainError("TimeGrid: tau must be > 0");
  TimeGrid g;
  g.tau = tau;
  g.intervals = std::max(4, (min_intervals + 3) / 4 * 4);
  const int n = g.intervals;
  const double h = tau / n;
  g.t.resize(n + 1);
  g.w.resize(n + 1);
  static constexpr double boole[4] = {14.0, 32.0, 12.0, 32.0};
  for (int i = 0; i <= n; ++i) {
    g.t[i] = tau * static_cast<double>(i) / n;
    g.w[i] = 2.0 * h / 45.0 * boole[i % 4];
  }
  g.w.front() = g.w.back() = 2.0 * h / 45.0 * 7.0;
  return g;
}

TimeGrid TimeGrid::for_drift(const DriftModel& drift, double tau, int per_scale) {
  const double periods = tau * drift.omega_m / constants::two_pi;
  const double decays = tau * drift.kappa;
  const double want = per_scale * std::max({periods, decays, 1.0});
  if (want > 5e7) throw DomainError("TimeGrid: pulse too long for a sampled quadrature grid");
  return uniform(tau, static_cast<int>(std::ceil(want)));
}

cplx TimeGrid::integrate(const cvec& f) const {
  if (f.size() != t.size()) throw ContractViolation("TimeGrid::integrate: size mismatch");
  cplx s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += w[i] * f[i];
  return s;
}

IOCoefficients io_relation(const DriftModel& drift, const OutputMode& alpha_out,
                           const TimeGrid& grid) {
  if (std::abs(alpha_out.norm_squared_integral() - 1.0) > 1e-9)
    throw DomainError("io_relation: output envelope is not normalized on [0, tau]");
  if (std::abs(grid.tau - alpha_out.tau) > 1e-12 * alpha_out.tau)
    throw ContractViolation("io_relation: grid and output mode disagree on tau");

  const Propagator prop(drift.A);
  const double tau = grid.tau;
  const double sk = std::sqrt(2.0 * drift.kappa);
  const Eigen::Matrix4cd u4 = ladder_to_quadrature4();
  const Eigen::Matrix<cplx, 4, 2> bin = drift.input_coupling().cast<cplx>() * ladder_to_quadrature();
  const cplx rho_c = std::conj(alpha_out.rate);

  // B_out = e^{iω_m τ} a_m(τ),  a_c = e_a R.
  Eigen::RowVector4cd e_b(1.0, cplx(0, 1), 0.0, 0.0);
  e_b *= std::exp(cplx(0, drift.omega_m * tau)) * inv_sqrt2;
  Eigen::RowVector4cd e_a(0.0, 0.0, 1.0, cplx(0, 1));
  e_a *= inv_sqrt2;

  IOCoefficients io;
  io.alpha_out = alpha_out;
  io.grid = grid;
  io.gamma_included = drift.gamma_included;

  const Eigen::RowVector4cd cm = e_b * prop.evaluate(tau).cast<cplx>() * u4;
  // ∫ α*(t) a_c(t) dt picks up N ∫ e^{ρ* t} M(t) dt.
  const Eigen::RowVector4cd cl =
      sk * alpha_out.norm * e_a * prop.exponential_integral(rho_c, tau) * u4;
  for (int j = 0; j < 4; ++j) {
    io.mechanics.c[j] = cm(j);
    io.light.c[j] = cl(j);
  }

  const std::size_t n = grid.t.size();
  cvec k1(n), k2(n), l1(n), l2(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = grid.t[i];
    const double rest = std::max(0.0, tau - s);
    const Eigen::RowVector2cd km = e_b * prop.evaluate(rest).cast<cplx>() * bin;
    const cplx a_conj = std::conj(alpha_out(s));
    const Eigen::RowVector2cd kl = sk * alpha_out.norm * std::exp(rho_c * s) * e_a *
                                   prop.exponential_integral(rho_c, rest) * bin;
    k1[i] = km(0);
    k2[i] = km(1);
    l1[i] = a_conj + kl(0);
    l2[i] = kl(1);
  }
  fold_noise(grid, k1, k2, io.mechanics);
  fold_noise(grid, l1, l2, io.light);

  const std::array<const cvec*, 4> env{&io.mechanics.env1, &io.mechanics.env2, &io.light.env1,
                                       &io.light.env2};
  cvec prod(n);
  for (int a = 0; a < 4; ++a) {
    for (int b = a; b < 4; ++b) {
      for (std::size_t i = 0; i < n; ++i) prod[i] = (*env[a])[i] * std::conj((*env[b])[i]);
      const cplx v = grid.integrate(prod);
      io.overlap(a, b) = v;
      io.overlap(b, a) = std::conj(v);
    }
  }
  return io;
}

std::array<cplx, 6> mechanical_coefficients(const DriftModel& drift, double tau) {
  if (!(tau > 0.0)) throw DomainError("mechanical_coefficients: tau must be > 0");
  const Propagator prop(drift.A);
  const Eigen::Matrix<cplx, 4, 2> bin = drift.input_coupling().cast<cplx>() * ladder_to_quadrature();
  Eigen::RowVector4cd e_b(1.0, cplx(0, 1), 0.0, 0.0);
  e_b *= std::exp(cplx(0, drift.omega_m * tau)) * inv_sqrt2;
  const Eigen::RowVector4cd cm = e_b * prop.evaluate(tau).cast<cplx>() * ladder_to_quadrature4();
  std::array<cplx, 6> c{cm(0), cm(1), cm(2), cm(3), 0.0, 0.0};
  for (int j = 0; j < 2; ++j) {
    // ‖k_j‖² = e_B [∫ M b bᴴ Mᵀ] e_Bᴴ with b the j-th input column.
    const Eigen::Matrix4cd q = bin.col(j) * bin.col(j).adjoint();
    const cplx n2 = (e_b * prop.noise_integral(q, tau) * e_b.adjoint())(0, 0);
    c[4 + j] = std::sqrt(std::max(0.0, n2.real()));
  }
  return c;
}

Eigen::Matrix4cd output_second_moments(const IOCoefficients& io, double n0) {
  if (!(n0 >= 0.0)) throw DomainError("output_second_moments: n0 must be >= 0");
  const Eigen::Matrix4cd u_inv = ladder_to_quadrature4().inverse();
  Mat4 sigma0 = 0.5 * Mat4::Identity();
  sigma0(0, 0) = sigma0(1, 1) = n0 + 0.5;
  const Eigen::Matrix4cd moments0 =
      sigma0.cast<cplx>() + cplx(0, 0.5) * symplectic_form().cast<cplx>();

  // Quadrature O = x·B + x*·B† with x = 1/√2 (X) or −i/√2 (P).
  const std::array<cplx, 2> x{cplx(inv_sqrt2, 0), cplx(0, -inv_sqrt2)};
  Eigen::Matrix4cd w;     // rows: O_i in terms of the initial quadratures
  Eigen::Matrix4cd beta;  // rows: O_i's a_in coefficient on the four envelopes
  beta.setZero();
  for (int mode = 0; mode < 2; ++mode) {
    const ModeExpansion& e = mode == 0 ? io.mechanics : io.light;
    for (int q = 0; q < 2; ++q) {
      const int row = 2 * mode + q;
      const cplx xs = x[q];
      const cplx xc = std::conj(xs);
      Eigen::RowVector4cd v;
      v << xs * e.c[0] + xc * std::conj(e.c[1]), xs * e.c[1] + xc * std::conj(e.c[0]),
          xs * e.c[2] + xc * std::conj(e.c[3]), xs * e.c[3] + xc * std::conj(e.c[2]);
      w.row(row) = v * u_inv;
      beta(row, 2 * mode) = xs * e.c[4];
      beta(row, 2 * mode + 1) = xc * std::conj(e.c[5]);
    }
  }
  // Initial-operator coefficients are real up to rounding.
  const Eigen::Matrix4cd wr = w.real().cast<cplx>();
  Eigen::Matrix4cd h = wr * moments0 * wr.transpose();
  // O_i = Σ β_ia A_a + h.c. and ⟨A_a A_b†⟩ = ∫ e_a* e_b ds.
  h += beta * io.overlap.conjugate() * beta.adjoint();
  return h;
}

GaussianState output_state(const IOCoefficients& io, double n0, double n_bar, double epsilon) {
  if (io.gamma_included)
    throw ContractViolation("output_state: io relation must be built from the undamped drift");
  GaussianState s;
  const Mat4 cov = output_second_moments(io, n0).real();
  s.cov = 0.5 * (cov + cov.transpose());
  return thermal_augmentation(s, n_bar, epsilon);
}

double commutator_sum(const ModeExpansion& e) {
  return std::norm(e.c[0]) - std::norm(e.c[1]) + std::norm(e.c[2]) - std::norm(e.c[3]) +
         std::norm(e.c[4]) - std::norm(e.c[5]);
}

ConvergedOutput converged_output(const DriftModel& drift, const OutputMode& alpha_out, double n0,
                                 double n_bar, double epsilon, double tol, int max_doublings) {
  TimeGrid grid = TimeGrid::for_drift(drift, alpha_out.tau);
  ConvergedOutput out;
  out.io = io_relation(drift, alpha_out, grid);
  out.state = output_state(out.io, n0, n_bar, epsilon);
  out.delta_epr = epr_variance(out.state);
  for (int k = 1; k <= max_doublings; ++k) {
    grid = TimeGrid::uniform(alpha_out.tau, 2 * grid.intervals);
    IOCoefficients io = io_relation(drift, alpha_out, grid);
    GaussianState st = output_state(io, n0, n_bar, epsilon);
    const double d = epr_variance(st);
    const double change = std::abs(d - out.delta_epr);
    out.io = std::move(io);
    out.state = st;
    out.delta_epr = d;
    out.doublings = k;
    if (change < tol) {
      out.converged = true;
      break;
    }
  }
  return out;
}

}  // namespace pulsent
