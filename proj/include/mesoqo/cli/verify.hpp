#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "mesoqo/cli/experiments.hpp"
#include "mesoqo/squid.hpp"
#include "mesoqo/state_types.hpp"

namespace mesoqo::cli {

struct CheckResult {
  std::string name;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  bool pass() const;
  nlohmann::json to_json() const;
};

const std::vector<std::string>& suite_names();

/// Throws ConfigError for an unknown suite.
SuiteReport run_suite(const std::string& name, const Context& ctx);

/// Closed-form Weyl values against the converged Fock-space trace.
TruncationRecord weyl_spot_check(const std::string& label, const PhotonState& state,
                                 const std::vector<cplx>& points, const fockbench::TruncationPolicy& policy);

/// Closed-form joint intensities against two-mode matrices at a few points.
TruncationRecord joint_spot_check(const std::string& label, const TwoModePhotonState& state, double q,
                                  const fockbench::TruncationPolicy& policy);

/// SQUID current moments from displacement algebra against two-mode matrices.
TruncationRecord current_spot_check(const std::string& label, const TwoModePhotonState& state,
                                    const squid::TwoSquidParams& p, const fockbench::TruncationPolicy& policy);

}  // namespace mesoqo::cli
