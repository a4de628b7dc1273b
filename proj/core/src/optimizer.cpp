#include "pulsent/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>

#include <boost/math/tools/minima.hpp>

#include "pulsent/drift.hpp"
#include "pulsent/errors.hpp"
#include "pulsent/logging.hpp"
#include "pulsent/metrics.hpp"
#include "pulsent/pulse_covariance.hpp"

namespace pulsent {
namespace {

constexpr double inf = std::numeric_limits<double>::infinity();
using Point = std::array<double, 3>;  // log10 of (ε, η, ξ)

double epr_at(const DimensionlessParams& d, double rate_scale, bool thermal) {
  PhysicalParams p;
  p.omega_m = 1.0;
  p.kappa = d.eta;
  p.g = d.xi * d.eta;
  p.detuning = -1.0;
  p.tau = d.epsilon * d.Q;
  const DriftModel drift = build_drift(p, false);
  const OutputMode mode = default_output_mode(drift, p.tau, rate_scale);
  GaussianState s = pulse_output_state(drift, mode, d.n0);
  if (thermal) s = thermal_augmentation(s, d.n_bar, d.epsilon);
  return epr_variance(s);
}

double best_rate_scale(const DimensionlessParams& d) {
  auto f = [&d](double s) {
    try {
      const double v = epr_at(d, s, false);
      return std::isfinite(v) ? v : inf;
    } catch (const std::exception&) {
      return inf;
    }
  };
  return boost::math::tools::brent_find_minima(f, 0.5, 1.5, 30).first;
}

std::string triple(double eps, double eta, double xi) {
  std::ostringstream os;
  os.precision(10);
  os << "(eps=" << eps << ", eta=" << eta << ", xi=" << xi << ")";
  return os.str();
}

struct Box {
  Point lo;
  Point hi;
  bool contains(const Point& x) const {
    for (int i = 0; i < 3; ++i)
      if (!(x[i] >= lo[i] && x[i] <= hi[i])) return false;
    return true;
  }
};

class Evaluator {
 public:
  Evaluator(double n_bar, double n0, double Q, const ObjectiveOptions& opt, const Box& box)
      : n_bar_(n_bar), n0_(n0), q_(Q), opt_(opt), box_(box) {}

  double operator()(const Point& x) const {
    if (!box_.contains(x)) return inf;
    try {
      const double v = objective(std::pow(10.0, x[0]), std::pow(10.0, x[1]),
                                 std::pow(10.0, x[2]), n_bar_, n0_, q_, opt_);
      return std::isfinite(v) ? v : inf;
    } catch (const std::exception&) {
      return inf;
    }
  }

 private:
  double n_bar_, n0_, q_;
  ObjectiveOptions opt_;
  Box box_;
};

struct LocalResult {
  Point x{};
  double f = inf;
  long evaluations = 0;
  long iterations = 0;
  int restarts = 0;
  bool converged = false;
};

// Nelder–Mead with standard coefficients; the box enters through f = +inf.
LocalResult nelder_mead(const Evaluator& f, Point start, double step, double f_tol, double x_tol,
                        int max_evals) {
  LocalResult out;
  out.x = start;
  out.f = f(start);
  ++out.evaluations;
  const double log_tol = std::log10(1.0 + x_tol);

  for (int restart = 0; restart < 4; ++restart) {
    std::array<Point, 4> s;
    std::array<double, 4> fs;
    s[0] = out.x;
    fs[0] = out.f;
    for (int i = 0; i < 3; ++i) {
      s[i + 1] = out.x;
      s[i + 1][i] += step;
      fs[i + 1] = f(s[i + 1]);
      if (!std::isfinite(fs[i + 1])) {
        s[i + 1][i] -= 2.0 * step;
        fs[i + 1] = f(s[i + 1]);
      }
      ++out.evaluations;
    }
    bool converged = false;
    while (out.evaluations < max_evals) {
      std::array<int, 4> idx{0, 1, 2, 3};
      std::stable_sort(idx.begin(), idx.end(), [&fs](int a, int b) { return fs[a] < fs[b]; });
      std::array<Point, 4> ss;
      std::array<double, 4> ff;
      for (int i = 0; i < 4; ++i) {
        ss[i] = s[idx[i]];
        ff[i] = fs[idx[i]];
      }
      s = ss;
      fs = ff;
      ++out.iterations;

      double spread = 0.0;
      for (int i = 1; i < 4; ++i)
        for (int k = 0; k < 3; ++k) spread = std::max(spread, std::abs(s[i][k] - s[0][k]));
      if (std::isfinite(fs[3]) && fs[3] - fs[0] <= f_tol && spread <= log_tol) {
        converged = true;
        break;
      }

      Point c{0.0, 0.0, 0.0};
      for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) c[k] += s[i][k] / 3.0;
      auto along = [&](double t) {
        Point p;
        for (int k = 0; k < 3; ++k) p[k] = c[k] + t * (s[3][k] - c[k]);
        return p;
      };
      const Point xr = along(-1.0);
      const double fr = f(xr);
      ++out.evaluations;
      if (fr < fs[0]) {
        const Point xe = along(-2.0);
        const double fe = f(xe);
        ++out.evaluations;
        if (fe < fr) {
          s[3] = xe;
          fs[3] = fe;
        } else {
          s[3] = xr;
          fs[3] = fr;
        }
      } else if (fr < fs[2]) {
        s[3] = xr;
        fs[3] = fr;
      } else {
        const bool outside = fr < fs[3];
        const Point xc = along(outside ? -0.5 : 0.5);
        const double fc = f(xc);
        ++out.evaluations;
        if (fc < (outside ? fr : fs[3])) {
          s[3] = xc;
          fs[3] = fc;
        } else {
          for (int i = 1; i < 4; ++i) {
            for (int k = 0; k < 3; ++k) s[i][k] = s[0][k] + 0.5 * (s[i][k] - s[0][k]);
            fs[i] = f(s[i]);
            ++out.evaluations;
          }
        }
      }
    }
    const auto best = std::min_element(fs.begin(), fs.end()) - fs.begin();
    const double improvement = out.f - fs[best];
    if (fs[best] <= out.f) {
      out.x = s[best];
      out.f = fs[best];
    }
    out.converged = converged;
    // Restart from the optimum with a fresh simplex; stop once a restart no
    // longer improves.
    if (!converged || !(improvement > f_tol) || restart == 3) break;
    ++out.restarts;
    step = std::max(step * 0.25, 10.0 * log_tol);
  }
  return out;
}

std::vector<double> log_axis(double lo, double hi, int per_decade) {
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  const int n = std::max(2, static_cast<int>(std::ceil((b - a) * per_decade)) + 1);
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  return v;
}

template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&fn, n, t, threads] {
      for (std::size_t i = t; i < n; i += threads) fn(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace

GaussianState objective_state(const DimensionlessParams& d, const ObjectiveOptions& opt) {
  d.validate();
  const double scale = opt.search_rate ? best_rate_scale(d) : opt.rate_scale;
  PhysicalParams p;
  p.omega_m = 1.0;
  p.kappa = d.eta;
  p.g = d.xi * d.eta;
  p.detuning = -1.0;
  p.tau = d.epsilon * d.Q;
  const DriftModel drift = build_drift(p, false);
  GaussianState s = pulse_output_state(drift, default_output_mode(drift, p.tau, scale), d.n0);
  return opt.thermal ? thermal_augmentation(s, d.n_bar, d.epsilon) : s;
}

double objective(double eps, double eta, double xi, double n_bar, double n0, double Q,
                 const ObjectiveOptions& opt) {
  DimensionlessParams d{eta, xi, eps, n_bar, n0, Q};
  try {
    d.validate();
    const double scale = opt.search_rate ? best_rate_scale(d) : opt.rate_scale;
    return epr_at(d, scale, opt.thermal);
  } catch (const DomainError& e) {
    throw DomainError(std::string(e.what()) + " at " + triple(eps, eta, xi));
  } catch (const std::exception& e) {
    throw NumericalError(std::string(e.what()) + " at " + triple(eps, eta, xi));
  }
}

DimensionlessParams OptimizationResult::point() const {
  return DimensionlessParams{eta_opt, xi_opt, eps_opt, n_bar, n0, Q};
}

void attach_device(OptimizationResult& r, const Device& device) {
  const DimensionlessParams d = r.point();
  r.derived = operating_point(d, device.omega_m, device.g0, device.wavelength, device.convention);
  r.hierarchy = validate_hierarchy(from_dimensionless(d, device.omega_m, device.g0));
}

OptimizationResult optimize(double n_bar, double n0, double Q, const OptimizerOptions& opt) {
  if (!(n_bar >= 0.0) || !(n0 >= 0.0) || !(Q > 1.0) || !std::isfinite(Q))
    throw DomainError("optimize: need n_bar >= 0, n0 >= 0 and Q > 1");
  const SearchBounds& b = opt.bounds;
  const double eps_hi = n_bar > 0.0 ? std::min(b.eps_hi, 1.0 / n_bar) : b.eps_hi;
  if (!(b.eps_lo < eps_hi && b.eta_lo < b.eta_hi && b.xi_lo < b.xi_hi) || !(b.eps_lo > 0.0) ||
      !(b.eta_lo > 0.0) || !(b.xi_lo > 0.0))
    throw DomainError("optimize: empty search box");
  const Box box{{std::log10(b.eps_lo), std::log10(b.eta_lo), std::log10(b.xi_lo)},
                {std::log10(eps_hi), std::log10(b.eta_hi), std::log10(b.xi_hi)}};
  const Evaluator f(n_bar, n0, Q, opt.objective, box);

  const int ppd = std::max(1, opt.points_per_decade);
  const auto ax_e = log_axis(b.eps_lo, eps_hi, ppd);
  const auto ax_h = log_axis(b.eta_lo, b.eta_hi, ppd);
  const auto ax_x = log_axis(b.xi_lo, b.xi_hi, ppd);
  std::vector<Point> grid;
  grid.reserve(ax_e.size() * ax_h.size() * ax_x.size());
  for (double e : ax_e)
    for (double h : ax_h)
      for (double x : ax_x) grid.push_back({e, h, x});
  std::vector<double> values(grid.size());
  parallel_for(grid.size(), opt.threads, [&](std::size_t i) { values[i] = f(grid[i]); });

  std::vector<std::size_t> order(grid.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&values](std::size_t a, std::size_t c) { return values[a] < values[c]; });
  // Seeds are the best grid points that beat all their neighbours, so separate
  // basins each get a refinement; remaining slots take the next best points.
  const std::array<std::size_t, 3> dims{ax_e.size(), ax_h.size(), ax_x.size()};
  auto is_local_min = [&](std::size_t idx) {
    const std::array<long, 3> at{static_cast<long>(idx / (dims[1] * dims[2])),
                                 static_cast<long>(idx / dims[2] % dims[1]), static_cast<long>(idx % dims[2])};
    for (long di = -1; di <= 1; ++di)
      for (long dj = -1; dj <= 1; ++dj)
        for (long dk = -1; dk <= 1; ++dk) {
          const long i = at[0] + di, j = at[1] + dj, k = at[2] + dk;
          if ((di | dj | dk) == 0 || i < 0 || j < 0 || k < 0 || i >= static_cast<long>(dims[0]) ||
              j >= static_cast<long>(dims[1]) || k >= static_cast<long>(dims[2]))
            continue;
          if (values[(i * dims[1] + j) * dims[2] + k] < values[idx]) return false;
        }
    return true;
  };
  std::stable_partition(order.begin(), order.end(),
                        [&](std::size_t i) { return std::isfinite(values[i]) && is_local_min(i); });

  OptimizationResult res;
  res.n_bar = n_bar;
  res.n0 = n0;
  res.Q = Q;
  res.diagnostics.evaluations = static_cast<long>(grid.size());

  std::vector<Point> seeds;
  if (opt.warm_start) {
    const auto& w = *opt.warm_start;
    Point p{std::log10(w[0]), std::log10(w[1]), std::log10(w[2])};
    for (int i = 0; i < 3; ++i) p[i] = std::clamp(p[i], box.lo[i], box.hi[i]);
    seeds.push_back(p);
  }
  for (std::size_t k = 0; k < order.size() && static_cast<int>(k) < opt.refine_seeds; ++k)
    if (std::isfinite(values[order[k]])) seeds.push_back(grid[order[k]]);
  if (seeds.empty()) {
    throw NumericalError("optimize: objective is non-finite on the whole seed grid");
  }

  const double step = 1.0 / ppd;
  std::vector<LocalResult> local(seeds.size());
  parallel_for(seeds.size(), opt.threads, [&](std::size_t i) {
    local[i] = nelder_mead(f, seeds[i], step, opt.f_tol, opt.x_tol, opt.max_evaluations);
  });

  std::size_t best = 0;
  for (std::size_t i = 0; i < local.size(); ++i) {
    res.diagnostics.evaluations += local[i].evaluations;
    res.diagnostics.iterations += local[i].iterations;
    res.diagnostics.restarts += local[i].restarts;
    if (local[i].f < local[best].f) best = i;
  }
  if (!std::isfinite(local[best].f)) {
    const Point& g = grid[order.front()];
    throw NumericalError("optimize: all refinements diverged; best grid point " +
                         triple(std::pow(10.0, g[0]), std::pow(10.0, g[1]), std::pow(10.0, g[2])));
  }
  const LocalResult& lr = local[best];
  res.diagnostics.converged = lr.converged;
  res.eps_opt = std::pow(10.0, lr.x[0]);
  res.eta_opt = std::pow(10.0, lr.x[1]);
  res.xi_opt = std::pow(10.0, lr.x[2]);
  res.delta_epr_min = lr.f;
  res.thermal_share = (2.0 * n_bar + 1.0) * res.eps_opt;
  res.eps_prime = res.eps_opt / res.delta_epr_min;
  if (opt.device) attach_device(res, *opt.device);
  if (!lr.converged) {
    log(LogLevel::warning, "optimize: best refinement hit the evaluation limit at n_bar = " +
                               std::to_string(n_bar));
  }
  return res;
}

std::vector<OptimizationResult> sweep(const std::vector<double>& n_bar_list, double n0, double Q,
                                      const OptimizerOptions& opt) {
  if (!std::is_sorted(n_bar_list.begin(), n_bar_list.end()))
    throw DomainError("sweep: n_bar list must be sorted");
  std::vector<OptimizationResult> out;
  out.reserve(n_bar_list.size());
  OptimizerOptions local = opt;
  for (double nb : n_bar_list) {
    try {
      out.push_back(optimize(nb, n0, Q, local));
      const auto& r = out.back();
      local.warm_start = Point{r.eps_opt, r.eta_opt, r.xi_opt};
    } catch (const std::exception& e) {
      OptimizationResult r;
      r.n_bar = nb;
      r.n0 = n0;
      r.Q = Q;
      r.eps_opt = r.eta_opt = r.xi_opt = std::numeric_limits<double>::quiet_NaN();
      r.delta_epr_min = r.thermal_share = r.eps_prime = std::numeric_limits<double>::quiet_NaN();
      r.diagnostics.error = e.what();
      log(LogLevel::warning, std::string("sweep: point failed: ") + e.what());
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace pulsent
