#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "mesoqo/fockbench.hpp"

namespace mesoqo::cli {

/// Invalid configuration or command line; maps to exit status 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Params = std::map<std::string, double>;

/// Schema:
///   experiment  string, required
///   output      string, optional file stem (defaults to the experiment id)
///   params      object of numbers, optional; keys must be known to the experiment
///   truncation  object, optional: cap, tolerance, trace_tolerance
/// Unknown keys are rejected.
struct RunConfig {
  std::string experiment;
  std::string output;
  Params params;  ///< defaults merged with overrides
  fockbench::TruncationPolicy truncation;

  nlohmann::json to_json() const;
};

RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace mesoqo::cli
