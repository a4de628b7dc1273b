#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "commands.hpp"
#include "pulsent/errors.hpp"
#include "pulsent/logging.hpp"
#include "pulsent/version.hpp"

namespace pulsent::cli {
namespace {

// A flag that writes into the config at a dotted path when given.
struct Override {
  CLI::Option* option;
  std::string path;
  enum Kind { real, integer, text, on, off } kind;
};

class Overrides {
 public:
  void real(CLI::App* app, const std::string& flag, const std::string& path, const std::string& help) {
    add(app->add_option(flag)->type_name("FLOAT")->description(help), path, Override::real);
  }
  void integer(CLI::App* app, const std::string& flag, const std::string& path, const std::string& help) {
    add(app->add_option(flag)->type_name("INT")->description(help), path, Override::integer);
  }
  void text(CLI::App* app, const std::string& flag, const std::string& path, const std::string& help) {
    add(app->add_option(flag)->type_name("TEXT")->description(help), path, Override::text);
  }
  void on(CLI::App* app, const std::string& flag, const std::string& path, const std::string& help) {
    add(app->add_flag(flag, help), path, Override::on);
  }
  void off(CLI::App* app, const std::string& flag, const std::string& path, const std::string& help) {
    add(app->add_flag(flag, help), path, Override::off);
  }

  void apply(json& cfg) const {
    for (const auto& o : list_) {
      if (o.option->count() == 0) continue;
      switch (o.kind) {
        case Override::real: set_path(cfg, o.path, o.option->as<double>()); break;
        case Override::integer: set_path(cfg, o.path, o.option->as<long long>()); break;
        case Override::text: set_path(cfg, o.path, o.option->as<std::string>()); break;
        case Override::on: set_path(cfg, o.path, true); break;
        case Override::off: set_path(cfg, o.path, false); break;
      }
    }
  }

 private:
  void add(CLI::Option* opt, const std::string& path, Override::Kind kind) { list_.push_back({opt, path, kind}); }
  std::vector<Override> list_;
};

void error_json(std::ostream& err, const std::string& type, const std::string& message,
                const std::vector<std::string>& keys = {}) {
  json e{{"type", type}, {"message", message}};
  if (!keys.empty()) e["unknown_keys"] = keys;
  err << json{{"error", e}}.dump() << '\n';
}

// Routes library warnings to `err` for the duration of a run.
class LogRedirect {
 public:
  explicit LogRedirect(std::ostream& err) {
    set_log_sink([&err](LogLevel level, std::string_view msg) {
      if (level == LogLevel::debug) return;
      err << (level == LogLevel::warning ? "[pulsent:warn] " : "[pulsent] ") << msg << '\n';
    });
  }
  ~LogRedirect() {
    set_log_sink([](LogLevel level, std::string_view msg) {
      if (level == LogLevel::debug) return;
      std::clog << (level == LogLevel::warning ? "[pulsent:warn] " : "[pulsent] ") << msg << '\n';
    });
  }
};

void check_writable(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto probe = dir / ".pulsent-write-probe";
  write_atomic(probe, "");
  std::filesystem::remove(probe);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pulsed optomechanical entanglement: closed forms, full dynamics, optimization", "pulsent"};
  app.set_version_flag("--version", std::string(pulsent::version));
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, preset_name;
  Overrides ov;
  app.add_option("--config", config_path, "JSON config (frequencies in Hz)")->envname("PULSENT_CONFIG");
  app.add_option("--preset", preset_name, "Reference operating point: row1, row2 or row3");
  ov.text(&app, "--out-dir", "output.dir", "Write CSV/JSON files into this directory");
  ov.text(&app, "--format", "output.format", "csv, json or both (default both)");
  ov.text(&app, "--scenario", "scenario", "Scenario name recorded in output headers");
  ov.integer(&app, "--threads", "optimizer.threads", "Worker threads for the optimizer");

  auto* ideal = app.add_subcommand("ideal", "Closed-form protocol: EPR variance, fidelity, negativity");
  ov.real(ideal, "--r", "ideal.r", "Squeezing r = G*tau");
  ov.real(ideal, "--n0", "ideal.n0", "Initial mechanical occupation");

  auto* dyn = app.add_subcommand("dynamics", "Full linearized dynamics at one operating point");
  ov.on(dyn, "--cross-check", "dynamics.cross_check", "Also evaluate on a converged quadrature grid");
  ov.on(dyn, "--cw-scan", "dynamics.cw_scan", "Also scan the continuous-wave steady state");
  ov.real(dyn, "--cw-from", "cw_scan.detuning_from", "CW scan lower detuning in units of f_m");
  ov.real(dyn, "--cw-to", "cw_scan.detuning_to", "CW scan upper detuning in units of f_m");

  auto* opt = app.add_subcommand("optimize", "Minimize the EPR variance over (eps, eta, xi)");
  ov.real(opt, "--n-bar", "optimize.n_bar", "Bath occupation");
  ov.real(opt, "--n0", "optimize.n0", "Initial mechanical occupation");
  ov.real(opt, "--Q", "optimize.Q", "Mechanical quality factor");
  ov.integer(opt, "--points-per-decade", "optimizer.points_per_decade", "Seed grid density");
  ov.on(opt, "--rate-search", "optimizer.rate_search", "Also optimize the output-mode rate");

  auto* sw = app.add_subcommand("sweep", "Optimize along a sorted list of bath occupations");
  ov.on(sw, "--figure2", "sweep.figure2", "Run both published scenarios (Q=1e7,n0=50 and Q=1e5,n0=0)");
  ov.real(sw, "--n-bar-from", "sweep.n_bar_from", "First occupation of the log grid");
  ov.real(sw, "--n-bar-to", "sweep.n_bar_to", "Last occupation of the log grid");
  ov.integer(sw, "--points", "sweep.points", "Number of grid points");
  ov.real(sw, "--n0", "sweep.n0", "Initial mechanical occupation");
  ov.real(sw, "--Q", "sweep.Q", "Mechanical quality factor");
  ov.integer(sw, "--points-per-decade", "optimizer.points_per_decade", "Seed grid density");

  auto* app_v = app.add_subcommand("appendix-validate", "Classical amplitudes and envelope checks");
  ov.text(app_v, "--shape", "envelope.shape", "flat_top or step");
  ov.real(app_v, "--ramp", "envelope.ramp", "Ramp length as a fraction of tau");
  ov.integer(app_v, "--samples", "envelope.samples", "Trajectory intervals");
  ov.off(app_v, "--unlocked", "envelope.locked_detuning", "Let the detuning follow the mirror displacement");

  auto* t1 = app.add_subcommand("table1", "Optimize the three reference rows and compare");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    error_json(err, "usage", e.what());
    return 2;
  }

  LogRedirect redirect(err);
  try {
    json cfg = config_path.empty() ? json::object() : load_config_file(config_path);
    check_config(cfg);
    if (!preset_name.empty()) cfg.merge_patch(preset(preset_name));
    ov.apply(cfg);
    check_config(cfg);

    const std::map<CLI::App*, std::pair<std::string, std::function<RunRecord(const json&)>>> commands{
        {ideal, {"ideal", run_ideal}},         {dyn, {"dynamics", run_dynamics}},
        {opt, {"optimize", run_optimize}},     {sw, {"sweep", run_sweep}},
        {app_v, {"appendix-validate", run_appendix}}, {t1, {"table1", run_table1}},
    };
    CLI::App* chosen = app.get_subcommands().front();
    const auto& [name, fn] = commands.at(chosen);

    const json output = cfg.value("output", json::object());
    const Format format = parse_format(output.value("format", std::string("both")));
    const std::string dir = output.value("dir", std::string());
    if (!dir.empty()) check_writable(dir);

    RunRecord rec = fn(cfg);
    rec.digest = sha256_hex(digest_input(name, cfg));
    if (!dir.empty()) {
      const auto files = emit(rec, dir, format);
      json list = json::array();
      for (const auto& f : files) list.push_back(f.string());
      rec.diagnostics["files"] = list;
    }
    if (name == "table1")
      out << table1_text(rec);
    else
      out << to_json(rec).dump() << '\n';
    return 0;
  } catch (const ConfigError& e) {
    error_json(err, "config", e.what(), e.keys());
    return 2;
  } catch (const DomainError& e) {
    error_json(err, "domain", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    error_json(err, "usage", e.what());
    return 2;
  } catch (const NumericalError& e) {
    error_json(err, "numerical", e.what());
    return 3;
  } catch (const std::exception& e) {
    error_json(err, "runtime", e.what());
    return 1;
  }
}

}  // namespace pulsent::cli
