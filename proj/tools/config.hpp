#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "pulsent/optimizer.hpp"
#include "pulsent/params.hpp"

namespace pulsent::cli {

using json = nlohmann::json;

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg, std::vector<std::string> keys = {})
      : std::runtime_error(msg), keys_(std::move(keys)) {}
  const std::vector<std::string>& keys() const { return keys_; }

 private:
  std::vector<std::string> keys_;
};

// Accepted keys with their JSON types; nested objects mirror the config layout.
const json& config_schema();

// Throws ConfigError naming every unknown key and type mismatch, and when
// both parameter blocks are present.
void check_config(const json& cfg);

json load_config_file(const std::string& path);

// cfg["a"]["b"] = value for path "a.b", creating intermediate objects.
void set_path(json& cfg, const std::string& dotted, json value);

// Reference operating points as dimensionless + device blocks.
json preset(const std::string& name);

// Frequencies in the config are in Hz; these convert to angular units.
std::optional<PhysicalParams> physical_block(const json& cfg);
std::optional<DimensionlessParams> dimensionless_block(const json& cfg);

// From the device block, else from f_m/g0/wavelength of the physical block.
std::optional<Device> device_block(const json& cfg);

// Whichever parameter block is present; a dimensionless block needs a device
// for resolve_physical.
DimensionlessParams resolve_dimensionless(const json& cfg);
PhysicalParams resolve_physical(const json& cfg);

OptimizerOptions optimizer_options(const json& cfg);

// Canonical text hashed into output headers. Output location and thread
// count do not change results, so they are left out.
std::string digest_input(const std::string& command, const json& cfg);

}  // namespace pulsent::cli
