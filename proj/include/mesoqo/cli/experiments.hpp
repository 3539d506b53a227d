#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mesoqo/cli/config.hpp"
#include "mesoqo/cli/csv.hpp"

namespace mesoqo::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Every cell outside the axis columns is NaN; maps to exit status 4.
class SingularOutput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Converged truncation of a matrix spot check.
struct TruncationRecord {
  std::string label;
  int dim = 0;
  double max_error = 0.0;
};

struct Context {
  fockbench::TruncationPolicy policy;
  int threads = 1;
};

struct ExperimentResult {
  std::vector<Table> tables;  ///< the first is the primary table
  int axis_columns = 1;       ///< leading columns that are coordinates
  std::vector<TruncationRecord> truncation;
  nlohmann::json summary = nlohmann::json::object();
};

struct Experiment {
  std::string id;
  std::string description;
  Params defaults;
  std::function<ExperimentResult(const Params&, const Context&)> run;
};

const std::vector<Experiment>& experiments();
/// nullptr when the id is unknown.
const Experiment* find_experiment(const std::string& id);

/// Runs body(i) for i in [0, n). Each index writes only its own slot, so the
/// result does not depend on the thread count.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

ExperimentResult run_experiment(const RunConfig& config, const Context& ctx);

/// Runs, writes <stem>.csv, <stem>_<table>.csv and <stem>.manifest.json into
/// out_dir, and returns the written paths. Throws SingularOutput after writing
/// when a table holds singular points only.
std::vector<std::filesystem::path> run_and_write(const RunConfig& config, const Context& ctx,
                                                 const std::filesystem::path& out_dir);

}  // namespace mesoqo::cli
