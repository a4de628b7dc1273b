#pragma once

#include <string>

#include "config.hpp"
#include "output.hpp"

namespace pulsent::cli {

// Each command reads a validated config and returns the tables it produced.
RunRecord run_ideal(const json& cfg);
RunRecord run_dynamics(const json& cfg);
RunRecord run_optimize(const json& cfg);
RunRecord run_sweep(const json& cfg);
RunRecord run_appendix(const json& cfg);
RunRecord run_table1(const json& cfg);

// Side-by-side comparison of computed and reference rows for the terminal.
std::string table1_text(const RunRecord& rec);

}  // namespace pulsent::cli
