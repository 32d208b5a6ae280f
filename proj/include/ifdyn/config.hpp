#pragma once

#include <filesystem>
#include <string>

#include "ifdyn/scenarios.hpp"
#include "ifdyn/stepper.hpp"

namespace ifdyn {

/// Flat `key = value` text, one key per line, `#` starts a comment. Unknown
/// keys, duplicate keys and malformed values raise ConfigError.
struct RunConfig {
  std::string scenario = "flat_rest";
  ScenarioParams scenario_params;
  Params params;
  StepConfig step;
  std::string out_dir = "out";

  void validate() const;
  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);
std::string serialize_config(const RunConfig& config);

}  // namespace ifdyn
