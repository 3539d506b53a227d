#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <unistd.h>

#include "doctest.h"
#include "mesoqo/cli/app.hpp"
#include "mesoqo/cli/config.hpp"
#include "mesoqo/cli/csv.hpp"
#include "mesoqo/cli/experiments.hpp"

using namespace mesoqo::cli;
namespace fs = std::filesystem;

namespace {

const fs::path kConfigs = MESOQO_CONFIG_DIR;

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("mesoqo_cli_test_" + std::to_string(::getpid()))) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

struct Run {
  int status;
  std::string out, err;
};

Run app(std::vector<std::string> args) {
  args.insert(args.begin(), "mesoqo");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = run_app(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

fs::path write_json(const fs::path& dir, const std::string& name, const nlohmann::json& j) {
  const auto p = dir / name;
  std::ofstream(p) << j.dump();
  return p;
}

}  // namespace

TEST_CASE("double formatting is shortest round trip") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(2.0) == "2");
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(std::nan("")) == "nan");
  CHECK(format_double(-INFINITY) == "-inf");
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double v = u(rng) * std::pow(10.0, (i % 40) - 20);
    CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
  }
}

TEST_CASE("csv layout") {
  const Table t{"", {"a", "b"}, {{1.0, 0.5}, {-2.0, 1e-20}}};
  CHECK(to_csv(t) == "a,b\n1,0.5\n-2,1e-20\n");
  const Table bad{"", {"a"}, {{1.0, 2.0}}};
  CHECK_THROWS_AS(to_csv(bad), std::logic_error);
}

TEST_CASE("config parsing is strict") {
  const auto ok = parse_config({{"experiment", "fig9"}, {"params", {{"q", 0.3}}}, {"truncation", {{"cap", 512}}}});
  CHECK(ok.params.at("q") == 0.3);
  CHECK(ok.params.at("points") == 201.0);
  CHECK(ok.output == "fig9");
  CHECK(ok.truncation.cap == 512);
  CHECK_THROWS_AS(parse_config({{"experiment", "fig9"}, {"colour", 1}}), ConfigError);
  CHECK_THROWS_AS(parse_config({{"experiment", "fig9"}, {"params", {{"qq", 0.3}}}}), ConfigError);
  CHECK_THROWS_AS(parse_config({{"experiment", "fig9"}, {"params", {{"q", "big"}}}}), ConfigError);
  CHECK_THROWS_AS(parse_config({{"experiment", "fig99"}}), ConfigError);
  CHECK_THROWS_AS(parse_config({{"params", nlohmann::json::object()}}), ConfigError);
  CHECK_THROWS_AS(parse_config({{"experiment", "fig9"}, {"output", "../x"}}), ConfigError);
  CHECK_THROWS_AS(parse_config({{"experiment", "fig9"}, {"truncation", {{"cap", 1}}}}), ConfigError);
  CHECK_THROWS_AS(parse_config(nlohmann::json::array()), ConfigError);
}

TEST_CASE("every figure has a shipped config") {
  for (const char* id : {"fig1", "fig4", "fig5", "fig6", "fig7", "fig9", "fig10", "fig11", "fig14", "fig15", "fig16",
                         "fig17", "fig18", "fitq", "shapiro"}) {
    const auto cfg = load_config(kConfigs / (std::string(id) + ".json"));
    CHECK(cfg.experiment == id);
    // Shipped configs spell out every default.
    CHECK(cfg.params == find_experiment(id)->defaults);
  }
  CHECK(experiments().size() == 15);
}

TEST_CASE("run writes csv and manifest") {
  TempDir tmp;
  const auto r = app({"run", "--config", (kConfigs / "fig11.json").string(), "--out", tmp.path.string()});
  REQUIRE(r.status == 0);
  const auto csv = slurp(tmp.path / "fig11.csv");
  CHECK(csv.rfind("t_scaled,R_ent,R_sep\n", 0) == 0);
  CHECK(csv.find('\r') == std::string::npos);
  const auto manifest = nlohmann::json::parse(slurp(tmp.path / "fig11.manifest.json"));
  CHECK(manifest["version"] == kVersion);
  CHECK(manifest["config"]["experiment"] == "fig11");
  CHECK(manifest["outputs"][0]["rows"] == 401);
  CHECK(manifest["truncation"].size() == 2);
  CHECK(manifest["truncation"][0]["dim"].get<int>() > 0);
}

TEST_CASE("thread count does not change output") {
  TempDir tmp;
  const auto cfg = (kConfigs / "fig10.json").string();
  REQUIRE(app({"--threads", "1", "run", "--config", cfg, "--out", (tmp.path / "a").string()}).status == 0);
  REQUIRE(app({"run", "--config", cfg, "--out", (tmp.path / "b").string(), "--threads", "5"}).status == 0);
  CHECK(slurp(tmp.path / "a" / "fig10.csv") == slurp(tmp.path / "b" / "fig10.csv"));
  CHECK(slurp(tmp.path / "a" / "fig10.manifest.json") == slurp(tmp.path / "b" / "fig10.manifest.json"));
}

TEST_CASE("output directory from the environment") {
  TempDir tmp;
  ::setenv("MESOQO_OUT_DIR", tmp.path.string().c_str(), 1);
  const auto r = app({"run", "--config", (kConfigs / "fitq.json").string()});
  ::unsetenv("MESOQO_OUT_DIR");
  REQUIRE(r.status == 0);
  CHECK(fs::exists(tmp.path / "fitq.csv"));
}

TEST_CASE("exit statuses") {
  TempDir tmp;
  CHECK(app({"run", "--config", (tmp.path / "missing.json").string()}).status == 2);
  {
    const auto p = tmp.path / "broken.json";
    std::ofstream(p) << "{ not json";
    CHECK(app({"run", "--config", p.string()}).status == 2);
  }
  CHECK(app({"run", "--config", write_json(tmp.path, "bad.json", {{"experiment", "fig9"}, {"params", {{"points", 2.5}}}}).string(),
             "--out", tmp.path.string()})
            .status == 2);
  CHECK(app({"frobnicate"}).status == 2);
  CHECK(app({"verify", "nonsense"}).status == 2);
  // A tiny cap cannot hold a squeezed state.
  CHECK(app({"run", "--config", (kConfigs / "fig1.json").string(), "--out", tmp.path.string(), "--dim-cap", "8"}).status == 3);
  // Vanishing first moments leave only singular ratios.
  const auto singular = write_json(tmp.path, "sing.json",
                                   {{"experiment", "fig14"},
                                    {"output", "sing"},
                                    {"params", {{"omega_a", 0.0}, {"omega_b", 0.0}, {"a1", 0.0}, {"a2", 0.0}, {"points", 5}}}});
  const auto r = app({"run", "--config", singular.string(), "--out", tmp.path.string()});
  CHECK(r.status == 4);
  CHECK(fs::exists(tmp.path / "sing.csv"));
  CHECK(nlohmann::json::parse(slurp(tmp.path / "sing.manifest.json"))["outputs"][0]["singular_points"] == 10);
}

TEST_CASE("verify reports and list-experiments") {
  const auto r = app({"verify", "twomode"});
  REQUIRE(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["suite"] == "twomode");
  CHECK(j["pass"] == true);
  CHECK(j["checks"].size() >= 5);
  const auto l = app({"list-experiments"});
  CHECK(l.status == 0);
  CHECK(l.out.find("fig18\t") != std::string::npos);
  CHECK(app({"--help"}).status == 0);
}
