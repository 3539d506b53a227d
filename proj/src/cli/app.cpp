#include "mesoqo/cli/app.hpp"

#include <cstdlib>
#include <ostream>

#include "CLI11.hpp"
#include "mesoqo/cli/config.hpp"
#include "mesoqo/cli/experiments.hpp"
#include "mesoqo/cli/verify.hpp"

namespace mesoqo::cli {

namespace {

std::filesystem::path output_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("MESOQO_OUT_DIR"); env != nullptr && *env != '\0') return env;
  return ".";
}

}  // namespace

int run_app(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum field effects on mesoscopic interference devices and SQUID rings"};
  app.require_subcommand(1);
  std::string config_path, out_dir, suite;
  int dim_cap = 0, threads = 0;
  app.add_option("--dim-cap", dim_cap, "Upper bound on the Fock-space dimension")->check(CLI::Range(2, 1 << 20));
  app.add_option("--threads", threads, "Worker threads (0 = hardware); results do not depend on it")->check(CLI::NonNegativeNumber);

  auto* run = app.add_subcommand("run", "Run one experiment and write CSV plus a manifest");
  run->add_option("--config", config_path, "Experiment config (JSON)")->required();
  run->add_option("--out", out_dir, "Output directory (overrides MESOQO_OUT_DIR)");
  run->fallthrough();

  auto* verify = app.add_subcommand("verify", "Run an oracle-equivalence suite and print a JSON report");
  verify->add_option("suite", suite, "weyl-oracle, flux-stats, autocorr, twomode, squid or all")->required();
  verify->fallthrough();

  auto* list = app.add_subcommand("list-experiments", "List experiment ids with their defaults");
  list->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "mesoqo: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*list) {
      for (const auto& e : experiments()) {
        out << e.id << "\t" << e.description << "\n";
        for (const auto& [k, v] : e.defaults) out << "    " << k << " = " << format_double(v) << "\n";
      }
      return 0;
    }
    Context ctx;
    ctx.threads = threads;
    if (*run) {
      RunConfig cfg = load_config(config_path);
      if (dim_cap > 0) cfg.truncation.cap = dim_cap;
      ctx.policy = cfg.truncation;
      int status = 0;
      std::vector<std::filesystem::path> files;
      try {
        files = run_and_write(cfg, ctx, output_dir(out_dir));
      } catch (const SingularOutput& e) {
        err << "mesoqo: " << e.what() << "\n";
        status = 4;
      }
      for (const auto& f : files) out << f.string() << "\n";
      return status;
    }
    if (dim_cap > 0) ctx.policy.cap = dim_cap;
    std::vector<std::string> names = suite == "all" ? suite_names() : std::vector<std::string>{suite};
    nlohmann::json reports = nlohmann::json::array();
    bool ok = true;
    for (const auto& n : names) {
      const auto rep = run_suite(n, ctx);
      ok = ok && rep.pass();
      reports.push_back(rep.to_json());
    }
    out << (names.size() == 1 ? reports[0] : reports).dump(2) << "\n";
    return ok ? 0 : 1;
  } catch (const ConfigError& e) {
    err << "mesoqo: invalid config: " << e.what() << "\n";
    return 2;
  } catch (const fockbench::TruncationError& e) {
    err << "mesoqo: truncation did not converge: " << e.what() << "\n";
    return 3;
  } catch (const SingularOutput& e) {
    err << "mesoqo: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    err << "mesoqo: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace mesoqo::cli
