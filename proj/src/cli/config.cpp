#include "mesoqo/cli/config.hpp"

#include <cmath>
#include <fstream>

#include "mesoqo/cli/experiments.hpp"

namespace mesoqo::cli {

namespace {

double number_field(const nlohmann::json& v, const std::string& where) {
  if (!v.is_number()) throw ConfigError(where + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(where + " must be finite");
  return d;
}

void parse_truncation(const nlohmann::json& t, fockbench::TruncationPolicy& policy) {
  if (!t.is_object()) throw ConfigError("truncation must be an object");
  for (const auto& [key, value] : t.items()) {
    if (key == "cap") {
      if (!value.is_number_integer() || value.get<long long>() < 2 || value.get<long long>() > (1 << 20)) {
        throw ConfigError("truncation.cap must be an integer in [2, 1048576]");
      }
      policy.cap = value.get<int>();
    } else if (key == "tolerance") {
      policy.tolerance = number_field(value, "truncation.tolerance");
      if (policy.tolerance <= 0.0) throw ConfigError("truncation.tolerance must be positive");
    } else if (key == "trace_tolerance") {
      policy.trace_tolerance = number_field(value, "truncation.trace_tolerance");
      if (policy.trace_tolerance <= 0.0) throw ConfigError("truncation.trace_tolerance must be positive");
    } else {
      throw ConfigError("unknown truncation key: " + key);
    }
  }
}

}  // namespace

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j;
  j["experiment"] = experiment;
  j["output"] = output;
  j["params"] = params;
  j["truncation"] = {{"cap", truncation.cap},
                     {"tolerance", truncation.tolerance},
                     {"trace_tolerance", truncation.trace_tolerance}};
  return j;
}

RunConfig parse_config(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig cfg;
  const Experiment* exp = nullptr;
  if (!doc.contains("experiment") || !doc["experiment"].is_string()) {
    throw ConfigError("config needs a string field 'experiment'");
  }
  cfg.experiment = doc["experiment"].get<std::string>();
  exp = find_experiment(cfg.experiment);
  if (exp == nullptr) throw ConfigError("unknown experiment: " + cfg.experiment);
  cfg.output = cfg.experiment;
  cfg.params = exp->defaults;

  for (const auto& [key, value] : doc.items()) {
    if (key == "experiment") continue;
    if (key == "output") {
      if (!value.is_string() || value.get<std::string>().empty()) throw ConfigError("output must be a non-empty string");
      cfg.output = value.get<std::string>();
      if (cfg.output.find('/') != std::string::npos || cfg.output.find('\\') != std::string::npos) {
        throw ConfigError("output is a file stem, not a path");
      }
    } else if (key == "params") {
      if (!value.is_object()) throw ConfigError("params must be an object");
      for (const auto& [pk, pv] : value.items()) {
        auto it = cfg.params.find(pk);
        if (it == cfg.params.end()) throw ConfigError("unknown parameter for " + cfg.experiment + ": " + pk);
        it->second = number_field(pv, "params." + pk);
      }
    } else if (key == "truncation") {
      parse_truncation(value, cfg.truncation);
    } else {
      throw ConfigError("unknown config key: " + key);
    }
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("malformed JSON in " + path.string() + ": " + e.what());
  }
  return parse_config(doc);
}

}  // namespace mesoqo::cli
