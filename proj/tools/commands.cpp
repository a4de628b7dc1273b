#include "commands.hpp"

#include <cmath>
#include <cstdio>

#include "pulsent/classical_amplitudes.hpp"
#include "pulsent/drift.hpp"
#include "pulsent/errors.hpp"
#include "pulsent/ideal_model.hpp"
#include "pulsent/io_relation.hpp"
#include "pulsent/metrics.hpp"
#include "pulsent/pulse_covariance.hpp"
#include "pulsent/steady_state.hpp"

namespace pulsent::cli {
namespace {

using constants::two_pi;

json num(double x) { return json(x); }
json opt_num(const std::optional<double>& x) { return x ? json(*x) : json(); }

json matrix(const Mat4& m) {
  json rows = json::array();
  for (int i = 0; i < 4; ++i) {
    json r = json::array();
    for (int j = 0; j < 4; ++j) r.push_back(m(i, j));
    rows.push_back(std::move(r));
  }
  return rows;
}

json hierarchy_json(const HierarchyReport& h) {
  json j = json::array();
  for (const auto& c : h.checks) j.push_back({{"name", c.name}, {"ratio", c.ratio}, {"flag", to_string(c.flag)}});
  return j;
}

json diagnostics_json(const OptimizerDiagnostics& d) {
  return {{"evaluations", d.evaluations},
          {"iterations", d.iterations},
          {"restarts", d.restarts},
          {"converged", d.converged},
          {"error", d.error}};
}

RunRecord record(const std::string& command, const json& cfg) {
  RunRecord r;
  r.command = command;
  r.scenario = cfg.value("scenario", command);
  return r;
}

template <class T>
T setting(const json& cfg, const char* block, const char* key, T fallback) {
  if (!cfg.contains(block)) return fallback;
  return cfg.at(block).value(key, fallback);
}

std::vector<double> log_grid(double from, double to, int points) {
  if (!(from > 0.0) || !(to >= from) || points < 1)
    throw ConfigError("sweep range needs 0 < n_bar_from <= n_bar_to and points >= 1");
  std::vector<double> out;
  if (points == 1) return {from};
  const double a = std::log10(from), b = std::log10(to);
  for (int i = 0; i < points; ++i) out.push_back(std::pow(10.0, a + (b - a) * i / (points - 1)));
  return out;
}

Device figure_device() { return Device{two_pi * 3.8e6, two_pi * 4.8, 1064e-9, RateConvention::cyclic}; }

double optimum_negativity(const OptimizationResult& r, const ObjectiveOptions& o) {
  return log_negativity(objective_state(r.point(), o));
}

}  // namespace

RunRecord run_ideal(const json& cfg) {
  RunRecord rec = record("ideal", cfg);
  const json block = cfg.value("ideal", json::object());
  double r = 0.0, n0 = 0.0;
  if (block.contains("r")) {
    r = block.at("r").get<double>();
    n0 = block.value("n0", 0.0);
  } else if (cfg.contains("physical") || cfg.contains("dimensionless")) {
    const auto d = resolve_dimensionless(cfg);
    r = d.squeezing();
    n0 = block.value("n0", d.n0);
  } else {
    throw ConfigError("ideal needs --r or a parameter block");
  }
  if (!(r >= 0.0) || !(n0 >= 0.0)) throw DomainError("ideal: r and n0 must be >= 0");

  const double delta = epr_variance_ideal(r, n0);
  const Mat4 s = entangle_map(r).quadrature_matrix();
  GaussianState state = GaussianState::thermal(n0, 0.0);
  state.cov = s * state.cov * s.transpose();
  const auto noise = teleport_added_noise(r, n0);

  Table t("ideal", "ideal");
  t.add({num(r), num(n0), num(delta), num(coherent_fidelity(delta)), num(log_negativity(state)),
         num(squeezing_threshold(n0)), delta < 2.0, num(noise.var_x), num(noise.var_p)});
  t.diagnostics["covariance"] = matrix(state.cov);
  rec.tables.push_back(std::move(t));
  return rec;
}

RunRecord run_dynamics(const json& cfg) {
  RunRecord rec = record("dynamics", cfg);
  // Without a device the dimensionless point is evaluated with ω_m = 1.
  const bool physical = cfg.contains("physical") || cfg.contains("device");
  const PhysicalParams p =
      physical ? resolve_physical(cfg) : from_dimensionless(resolve_dimensionless(cfg), 1.0, 1.0);
  const DimensionlessParams d = to_dimensionless(p);

  const DriftModel drift = build_drift(p, false);
  const OutputMode mode = default_output_mode(drift, p.tau);
  const GaussianState bare = pulse_output_state(drift, mode, p.n0);
  const GaussianState state = thermal_augmentation(bare, p.n_bar, d.epsilon);
  const auto report = entanglement_report(state);
  const auto hierarchy = validate_hierarchy(p);

  json grid_delta, grid_doublings;
  if (setting(cfg, "dynamics", "cross_check", false)) {
    const auto c = converged_output(drift, mode, p.n0, p.n_bar, d.epsilon);
    grid_delta = c.delta_epr;
    grid_doublings = c.doublings;
    rec.diagnostics["grid_converged"] = c.converged;
  }

  Table t("dynamics", "dynamics");
  t.add({num(d.epsilon), num(d.eta), num(d.xi), num(d.squeezing()), num(d.n_bar), num(d.n0), num(d.Q),
         num(report.delta_epr), num(epr_variance(bare)), num((2.0 * d.n_bar + 1.0) * d.epsilon),
         num(report.log_negativity), num(report.fidelity), report.entangled, to_string(hierarchy.worst()),
         grid_delta, grid_doublings});
  t.diagnostics["covariance"] = matrix(state.cov);
  t.diagnostics["hierarchy"] = hierarchy_json(hierarchy);
  t.diagnostics["detuning_over_omega_m"] = p.detuning / p.omega_m;
  rec.tables.push_back(std::move(t));

  if (setting(cfg, "dynamics", "cw_scan", false)) {
    const double lo = setting(cfg, "cw_scan", "detuning_from", 0.2);
    const double hi = setting(cfg, "cw_scan", "detuning_to", 1.8);
    const int nd = setting(cfg, "cw_scan", "detuning_points", 141);
    const int ng = setting(cfg, "cw_scan", "g_points", 200);
    const auto cw = cw_negativity_scan(p, lo * p.omega_m, hi * p.omega_m, nd, ng);
    Table c("cw_scan", "cw_scan");
    c.add({num(cw.detuning / p.omega_m), num(cw.g / p.omega_m), num(cw.g_threshold / p.omega_m),
           num(cw.log_negativity), num(epr_variance(cw.state))});
    c.diagnostics["covariance"] = matrix(cw.state.cov);
    rec.tables.push_back(std::move(c));
  }
  return rec;
}

RunRecord run_optimize(const json& cfg) {
  RunRecord rec = record("optimize", cfg);
  const json block = cfg.value("optimize", json::object());
  double n_bar, n0, Q;
  if (cfg.contains("physical") || cfg.contains("dimensionless")) {
    const auto d = resolve_dimensionless(cfg);
    n_bar = block.value("n_bar", d.n_bar);
    n0 = block.value("n0", d.n0);
    Q = block.value("Q", d.Q);
  } else {
    if (!block.contains("n_bar") || !block.contains("Q"))
      throw ConfigError("optimize needs n_bar and Q (flags, optimize block or a parameter block)");
    n_bar = block.at("n_bar").get<double>();
    n0 = block.value("n0", 0.0);
    Q = block.at("Q").get<double>();
  }
  const OptimizerOptions opt = optimizer_options(cfg);
  const auto r = optimize(n_bar, n0, Q, opt);

  Table t("optimize", "optimize");
  const auto& op = r.derived;
  t.add({num(r.n_bar), num(r.n0), num(r.Q), num(r.delta_epr_min), num(r.eps_opt), num(r.eta_opt), num(r.xi_opt),
         num(r.thermal_share), num(r.eps_prime), num(optimum_negativity(r, opt.objective)),
         op ? json(op->kappa / two_pi) : json(), op ? json(op->tau) : json(), op ? json(op->g / two_pi) : json(),
         op ? json(op->n_ph) : json(), op ? opt_num(op->power) : json(),
         r.hierarchy ? json(to_string(r.hierarchy->worst())) : json()});
  t.diagnostics = diagnostics_json(r.diagnostics);
  if (r.hierarchy) t.diagnostics["hierarchy"] = hierarchy_json(*r.hierarchy);
  rec.tables.push_back(std::move(t));
  return rec;
}

namespace {

Table sweep_table(const std::string& name, const std::vector<double>& n_bar, double n0, double Q,
                  const OptimizerOptions& opt) {
  Table t("sweep", name);
  t.diagnostics = {{"n0", n0}, {"Q", Q}, {"points", json::array()}};
  for (const auto& r : sweep(n_bar, n0, Q, opt)) {
    t.add({num(r.n_bar), num(r.delta_epr_min), num(r.eps_opt), num(r.eta_opt), num(r.xi_opt),
           num(r.thermal_share), num(r.eps_prime)});
    json d = diagnostics_json(r.diagnostics);
    d["n_bar"] = r.n_bar;
    if (r.hierarchy) d["hierarchy"] = hierarchy_json(*r.hierarchy);
    t.diagnostics["points"].push_back(std::move(d));
  }
  return t;
}

}  // namespace

RunRecord run_sweep(const json& cfg) {
  RunRecord rec = record("sweep", cfg);
  const json block = cfg.value("sweep", json::object());
  OptimizerOptions opt = optimizer_options(cfg);
  if (!opt.device) opt.device = figure_device();

  std::vector<double> n_bar;
  if (block.contains("n_bar")) {
    n_bar = block.at("n_bar").get<std::vector<double>>();
  } else {
    n_bar = log_grid(block.value("n_bar_from", 0.1), block.value("n_bar_to", 1e5), block.value("points", 37));
  }

  if (block.value("figure2", false)) {
    rec.scenario = cfg.value("scenario", std::string("figure2"));
    rec.tables.push_back(sweep_table("figure2_q1e7_n0_50", n_bar, 50.0, 1e7, opt));
    rec.tables.push_back(sweep_table("figure2_q1e5_n0_0", n_bar, 0.0, 1e5, opt));
    return rec;
  }
  double n0 = block.value("n0", 0.0), Q = block.value("Q", 0.0);
  if (cfg.contains("physical") || cfg.contains("dimensionless")) {
    const auto d = resolve_dimensionless(cfg);
    n0 = block.value("n0", d.n0);
    Q = block.value("Q", d.Q);
  }
  if (!(Q > 0.0)) throw ConfigError("sweep needs Q (flag, sweep block or a parameter block) or --figure2");
  rec.tables.push_back(sweep_table("sweep", n_bar, n0, Q, opt));
  return rec;
}

RunRecord run_appendix(const json& cfg) {
  RunRecord rec = record("appendix-validate", cfg);
  const PhysicalParams p = resolve_physical(cfg);
  const std::string shape = setting(cfg, "envelope", "shape", std::string("flat_top"));
  const double ramp = setting(cfg, "envelope", "ramp", 0.1);
  PulseEnvelope env = PulseEnvelope::step(p.tau);
  if (shape == "flat_top")
    env = PulseEnvelope::flat_top(p.tau, ramp);
  else if (shape != "step")
    throw ConfigError("envelope.shape must be 'flat_top' or 'step'");

  AmplitudeOptions opt;
  opt.samples = setting(cfg, "envelope", "samples", opt.samples);
  opt.locked_detuning = setting(cfg, "envelope", "locked_detuning", true);
  if (opt.samples < 4) throw ConfigError("envelope.samples must be >= 4");

  const double n_ph = photons_for_coupling(p.g, p.g0, p.kappa, p.detuning, p.tau);
  const auto exact = solve_amplitudes(p, n_ph, env, opt);
  const auto adiabatic = adiabatic_amplitudes(p, n_ph, env, opt);
  AmplitudeOptions free = opt;
  free.locked_detuning = false;
  const auto drifting = adiabatic_amplitudes(p, n_ph, env, free);
  const auto report = validate_envelope(p, env);
  const double deviation = plateau_deviation(exact, adiabatic, env);
  const double filter = linear_filter_check(p, env);
  const std::size_t mid = exact.t.size() / 2;

  Table t("appendix", "appendix");
  t.add({shape, num(env.ramp_fraction()), num(n_ph), num(std::abs(adiabatic.alpha[mid])),
         num(report.delta_bound.value), to_string(report.delta_bound.flag), num(report.slow_variation.value),
         to_string(report.slow_variation.flag), num(report.cavity_response.value),
         to_string(report.cavity_response.flag), num(deviation), deviation <= exact.delta_bound, num(filter),
         num((drifting.delta_eff[mid] - p.detuning) / two_pi)});
  rec.tables.push_back(std::move(t));

  Table traj("appendix_trajectory", "appendix_trajectory");
  for (std::size_t i = 0; i < exact.t.size(); ++i) {
    traj.add({num(exact.t[i]), num(env.value(exact.t[i])), num(exact.alpha[i].real()), num(exact.alpha[i].imag()),
              num(adiabatic.alpha[i].real()), num(adiabatic.alpha[i].imag()), num(exact.beta[i].real()),
              num(exact.beta[i].imag()), num(exact.delta_eff[i] / two_pi)});
  }
  rec.tables.push_back(std::move(traj));
  return rec;
}

namespace {

struct Reference {
  const char* preset;
  double kappa_hz, tau, power, g_hz, delta_epr;
};

const Reference references[] = {
    {"row1", 3.2e6, 2.5e-6, 30e-3, 0.97e6, 0.7},
    {"row2", 0.26e9, 0.41e-6, 6e-6, 0.032e9, 0.1},
    {"row3", 0.31e9, 0.30e-6, 8e-6, 0.040e9, 0.5},
};

}  // namespace

RunRecord run_table1(const json& cfg) {
  RunRecord rec = record("table1", cfg);
  Table t("table1", "table1");
  for (const auto& ref : references) {
    json row_cfg = preset(ref.preset);
    if (cfg.contains("optimizer")) row_cfg["optimizer"] = cfg.at("optimizer");
    const auto d = resolve_dimensionless(row_cfg);
    const OptimizerOptions opt = optimizer_options(row_cfg);
    const auto r = optimize(d.n_bar, d.n0, d.Q, opt);
    const auto& op = *r.derived;
    t.add({std::string(ref.preset), num(opt.device->omega_m / two_pi), num(d.Q), num(d.n_bar), num(d.n0),
           num(opt.device->g0 / two_pi), num(r.eps_opt), num(r.eta_opt), num(r.xi_opt), num(op.kappa / two_pi),
           num(op.tau), opt_num(op.power), num(op.g / two_pi), num(r.delta_epr_min),
           num(optimum_negativity(r, opt.objective)), num(ref.kappa_hz), num(ref.tau), num(ref.power),
           num(ref.g_hz), num(ref.delta_epr)});
    json diag = diagnostics_json(r.diagnostics);
    diag["row"] = ref.preset;
    diag["hierarchy"] = hierarchy_json(*r.hierarchy);
    t.diagnostics[ref.preset] = std::move(diag);
  }
  rec.tables.push_back(std::move(t));
  return rec;
}

std::string table1_text(const RunRecord& rec) {
  const Table& t = rec.tables.at(0);
  auto col = [&t](const char* name) {
    for (std::size_t i = 0; i < t.columns.size(); ++i)
      if (t.columns[i] == name) return i;
    throw std::logic_error(std::string("missing column ") + name);
  };
  auto v = [](const json& x) { return x.is_number() ? x.get<double>() : std::nan(""); };
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-5s %10s %7s %6s | %15s | %17s | %15s | %17s | %19s | %6s\n", "row", "f_m[Hz]",
                "n_bar", "n0", "DeltaEPR (ref)", "kappa/2pi[MHz]", "tau[us]", "g/2pi[MHz]", "P[W]", "E_N");
  out += line;
  for (const auto& r : t.rows) {
    std::snprintf(line, sizeof line,
                  "%-5s %10.3g %7.3g %6.3g | %6.3f (%5.2f) | %7.4g (%7.4g) | %6.3f (%5.2f) | %7.4g (%7.4g) | "
                  "%8.3g (%8.3g) | %6.3f\n",
                  r[col("row")].get<std::string>().c_str(), v(r[col("f_m_hz")]), v(r[col("n_bar")]),
                  v(r[col("n0")]), v(r[col("delta_epr")]), v(r[col("ref_delta_epr")]), v(r[col("kappa_hz")]) / 1e6,
                  v(r[col("ref_kappa_hz")]) / 1e6, v(r[col("tau_s")]) * 1e6, v(r[col("ref_tau_s")]) * 1e6,
                  v(r[col("g_hz")]) / 1e6, v(r[col("ref_g_hz")]) / 1e6, v(r[col("power_w")]),
                  v(r[col("ref_power_w")]), v(r[col("log_negativity")]));
    out += line;
  }
  return out;
}

}  // namespace pulsent::cli
