#include "config.hpp"

#include <fstream>

#include "pulsent/errors.hpp"

namespace pulsent::cli {
namespace {

const json number = "number";
const json integer = "integer";
const json boolean = "boolean";
const json string = "string";

bool type_matches(const json& v, const std::string& type) {
  if (type == "number") return v.is_number();
  if (type == "integer") return v.is_number_integer();
  if (type == "boolean") return v.is_boolean();
  if (type == "string") return v.is_string();
  if (type == "number[]") {
    if (!v.is_array()) return false;
    for (const auto& x : v)
      if (!x.is_number()) return false;
    return true;
  }
  return false;
}

void walk(const json& cfg, const json& schema, const std::string& prefix,
          std::vector<std::string>& unknown, std::vector<std::string>& wrong) {
  for (const auto& [key, value] : cfg.items()) {
    const std::string path = prefix.empty() ? key : prefix + "." + key;
    if (!schema.contains(key)) {
      unknown.push_back(path);
      continue;
    }
    const json& s = schema.at(key);
    if (s.is_object()) {
      if (!value.is_object())
        wrong.push_back(path + " (expected object)");
      else
        walk(value, s, path, unknown, wrong);
    } else if (!type_matches(value, s.get<std::string>())) {
      wrong.push_back(path + " (expected " + s.get<std::string>() + ")");
    }
  }
}

double get(const json& block, const char* key, double fallback) {
  return block.contains(key) ? block.at(key).get<double>() : fallback;
}

double require(const json& block, const char* key, const std::string& where) {
  if (!block.contains(key)) throw ConfigError(where + "." + key + " is required", {where + "." + key});
  return block.at(key).get<double>();
}

void exactly_one(const json& block, const char* a, const char* b, const std::string& where) {
  if (block.contains(a) == block.contains(b))
    throw ConfigError(where + ": give exactly one of '" + a + "' and '" + b + "'");
}

}  // namespace

const json& config_schema() {
  static const json s = {
      {"scenario", string},
      {"physical",
       {{"f_m", number},
        {"Q", number},
        {"gamma", number},
        {"kappa", number},
        {"g0", number},
        {"g", number},
        {"n_ph", number},
        {"detuning", number},
        {"tau", number},
        {"n_bar", number},
        {"temperature", number},
        {"n0", number},
        {"wavelength", number}}},
      {"dimensionless",
       {{"eps", number}, {"eta", number}, {"xi", number}, {"n_bar", number}, {"n0", number}, {"Q", number}}},
      {"device", {{"f_m", number}, {"g0", number}, {"wavelength", number}, {"convention", string}}},
      {"ideal", {{"r", number}, {"n0", number}}},
      {"dynamics", {{"cross_check", boolean}, {"cw_scan", boolean}}},
      {"cw_scan",
       {{"detuning_from", number}, {"detuning_to", number}, {"detuning_points", integer}, {"g_points", integer}}},
      {"optimizer",
       {{"points_per_decade", integer},
        {"refine_seeds", integer},
        {"f_tol", number},
        {"x_tol", number},
        {"max_evaluations", integer},
        {"threads", integer},
        {"rate_search", boolean},
        {"bounds",
         {{"eps_lo", number}, {"eps_hi", number}, {"eta_lo", number}, {"eta_hi", number}, {"xi_lo", number},
          {"xi_hi", number}}}}},
      {"optimize", {{"n_bar", number}, {"n0", number}, {"Q", number}}},
      {"sweep",
       {{"n_bar", "number[]"}, {"n0", number}, {"Q", number}, {"n_bar_from", number}, {"n_bar_to", number}, {"points", integer},
        {"figure2", boolean}}},
      {"envelope", {{"shape", string}, {"ramp", number}, {"samples", integer}, {"locked_detuning", boolean}}},
      {"output", {{"dir", string}, {"format", string}}},
  };
  return s;
}

void check_config(const json& cfg) {
  if (!cfg.is_object()) throw ConfigError("config must be a JSON object");
  std::vector<std::string> unknown, wrong;
  walk(cfg, config_schema(), "", unknown, wrong);
  if (!unknown.empty()) {
    std::string msg = "unknown config keys:";
    for (const auto& k : unknown) msg += " " + k;
    throw ConfigError(msg, unknown);
  }
  if (!wrong.empty()) {
    std::string msg = "config type errors:";
    for (const auto& k : wrong) msg += " " + k;
    throw ConfigError(msg);
  }
  if (cfg.contains("physical") && cfg.contains("dimensionless"))
    throw ConfigError("config has both a physical and a dimensionless block; keep one");
}

json load_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config file " + path);
  try {
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file " + path + " is not valid JSON: " + e.what());
  }
}

void set_path(json& cfg, const std::string& dotted, json value) {
  json* node = &cfg;
  std::size_t start = 0;
  for (;;) {
    const auto dot = dotted.find('.', start);
    const std::string key = dotted.substr(start, dot - start);
    if (dot == std::string::npos) {
      (*node)[key] = std::move(value);
      return;
    }
    node = &(*node)[key];
    start = dot + 1;
  }
}

json preset(const std::string& name) {
  struct Row {
    const char* name;
    double f_m, Q, n_bar, n0, g0, kappa, tau, g, wavelength;
  };
  // Optimal rows of the reference table: rates in Hz, τ quoted as ε·Q/f_m.
  static const Row rows[] = {
      {"row1", 3.8e6, 1e5, 1100.0, 0.0, 4.8, 3.2e6, 2.5e-6, 0.97e6, 1064e-9},
      {"row2", 3.7e9, 1e5, 0.7, 0.7, 910e3, 0.26e9, 0.41e-6, 0.032e9, 1064e-9},
      {"row3", 3.7e9, 1e5, 3.7, 3.7, 910e3, 0.31e9, 0.30e-6, 0.040e9, 1064e-9},
  };
  for (const auto& r : rows) {
    if (name != r.name) continue;
    return json{{"scenario", std::string("table1-") + r.name},
                {"dimensionless",
                 {{"eps", r.tau * r.f_m / r.Q},
                  {"eta", r.kappa / r.f_m},
                  {"xi", r.g / r.kappa},
                  {"n_bar", r.n_bar},
                  {"n0", r.n0},
                  {"Q", r.Q}}},
                {"device", {{"f_m", r.f_m}, {"g0", r.g0}, {"wavelength", r.wavelength}}}};
  }
  throw ConfigError("unknown preset '" + name + "' (expected row1, row2 or row3)");
}

std::optional<PhysicalParams> physical_block(const json& cfg) {
  if (!cfg.contains("physical")) return std::nullopt;
  const json& b = cfg.at("physical");
  const std::string w = "physical";
  exactly_one(b, "Q", "gamma", w);
  exactly_one(b, "g", "n_ph", w);
  exactly_one(b, "n_bar", "temperature", w);
  PhysicalParams p;
  p.omega_m = constants::two_pi * require(b, "f_m", w);
  p.kappa = constants::two_pi * require(b, "kappa", w);
  p.g0 = constants::two_pi * require(b, "g0", w);
  p.tau = require(b, "tau", w);
  p.gamma = b.contains("Q") ? p.omega_m / b.at("Q").get<double>()
                            : constants::two_pi * b.at("gamma").get<double>();
  p.detuning = b.contains("detuning") ? constants::two_pi * b.at("detuning").get<double>() : -p.omega_m;
  p.g = b.contains("g") ? constants::two_pi * b.at("g").get<double>()
                        : effective_coupling(p.g0, p.kappa, p.detuning, b.at("n_ph").get<double>(), p.tau);
  p.n_bar = b.contains("n_bar") ? b.at("n_bar").get<double>()
                                : occupation_from_temperature(p.omega_m, b.at("temperature").get<double>());
  p.n0 = get(b, "n0", 0.0);
  if (b.contains("wavelength")) p.lambda_l = b.at("wavelength").get<double>();
  p.validate();
  return p;
}

std::optional<DimensionlessParams> dimensionless_block(const json& cfg) {
  if (!cfg.contains("dimensionless")) return std::nullopt;
  const json& b = cfg.at("dimensionless");
  const std::string w = "dimensionless";
  DimensionlessParams d;
  d.epsilon = require(b, "eps", w);
  d.eta = require(b, "eta", w);
  d.xi = require(b, "xi", w);
  d.n_bar = require(b, "n_bar", w);
  d.n0 = get(b, "n0", 0.0);
  d.Q = require(b, "Q", w);
  d.validate();
  return d;
}

std::optional<Device> device_block(const json& cfg) {
  Device dev;
  if (cfg.contains("device")) {
    const json& b = cfg.at("device");
    dev.omega_m = constants::two_pi * require(b, "f_m", "device");
    dev.g0 = constants::two_pi * require(b, "g0", "device");
    if (b.contains("wavelength")) dev.wavelength = b.at("wavelength").get<double>();
    const std::string conv = b.value("convention", "cyclic");
    if (conv == "cyclic")
      dev.convention = RateConvention::cyclic;
    else if (conv == "angular")
      dev.convention = RateConvention::angular;
    else
      throw ConfigError("device.convention must be 'cyclic' or 'angular'");
    return dev;
  }
  if (const auto p = physical_block(cfg)) {
    dev.omega_m = p->omega_m;
    dev.g0 = p->g0;
    dev.wavelength = p->lambda_l;
    dev.convention = RateConvention::angular;
    return dev;
  }
  return std::nullopt;
}

DimensionlessParams resolve_dimensionless(const json& cfg) {
  if (const auto d = dimensionless_block(cfg)) return *d;
  if (const auto p = physical_block(cfg)) return to_dimensionless(*p);
  throw ConfigError("a physical or dimensionless parameter block is required (or use --preset)");
}

PhysicalParams resolve_physical(const json& cfg) {
  if (const auto p = physical_block(cfg)) return *p;
  const auto d = dimensionless_block(cfg);
  const auto dev = device_block(cfg);
  if (!d) throw ConfigError("a physical or dimensionless parameter block is required (or use --preset)");
  if (!dev) throw ConfigError("a dimensionless block needs a device block (f_m, g0) here");
  PhysicalParams p = from_dimensionless(*d, dev->omega_m, dev->g0);
  p.lambda_l = dev->wavelength;
  return p;
}

OptimizerOptions optimizer_options(const json& cfg) {
  OptimizerOptions o;
  if (cfg.contains("optimizer")) {
    const json& b = cfg.at("optimizer");
    o.points_per_decade = b.value("points_per_decade", o.points_per_decade);
    o.refine_seeds = b.value("refine_seeds", o.refine_seeds);
    o.f_tol = b.value("f_tol", o.f_tol);
    o.x_tol = b.value("x_tol", o.x_tol);
    o.max_evaluations = b.value("max_evaluations", o.max_evaluations);
    const int threads = b.value("threads", 1);
    if (threads < 1) throw ConfigError("optimizer.threads must be >= 1");
    o.threads = static_cast<unsigned>(threads);
    o.objective.search_rate = b.value("rate_search", false);
    if (b.contains("bounds")) {
      const json& s = b.at("bounds");
      o.bounds.eps_lo = get(s, "eps_lo", o.bounds.eps_lo);
      o.bounds.eps_hi = get(s, "eps_hi", o.bounds.eps_hi);
      o.bounds.eta_lo = get(s, "eta_lo", o.bounds.eta_lo);
      o.bounds.eta_hi = get(s, "eta_hi", o.bounds.eta_hi);
      o.bounds.xi_lo = get(s, "xi_lo", o.bounds.xi_lo);
      o.bounds.xi_hi = get(s, "xi_hi", o.bounds.xi_hi);
    }
    if (o.points_per_decade < 1 || o.refine_seeds < 1 || o.max_evaluations < 1)
      throw ConfigError("optimizer.points_per_decade, refine_seeds and max_evaluations must be >= 1");
  }
  o.device = device_block(cfg);
  return o;
}

std::string digest_input(const std::string& command, const json& cfg) {
  json c = cfg;
  c.erase("output");
  if (c.contains("optimizer")) c["optimizer"].erase("threads");
  return command + "\n" + c.dump();
}

}  // namespace pulsent::cli
