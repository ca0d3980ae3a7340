#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "bautin/cli/commands.hpp"
#include "bautin/cli/config.hpp"
#include "bautin/cli/output.hpp"
#include "bautin/cli/presets.hpp"
#include "bautin/errors.hpp"
#include "doctest.h"

using namespace bautin;
using namespace bautin::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("bautin_test_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(std::vector<std::string> args) {
  args.insert(args.begin(), "bautin");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_CASE("config text parsing") {
  KeyValueConfig cfg;
  cfg.merge_text("# comment\nmodel.sigma = 4.5   # trailing\n\ncoupling.kappa2=-0.1\n", "test");
  CHECK(cfg.get_double("model.sigma") == 4.5);
  CHECK(cfg.get_double("coupling.kappa2") == -0.1);
  CHECK_THROWS_WITH_AS(cfg.merge_text("model.sigma = 1\nbogus.key = 2\n", "f.cfg"),
                       "f.cfg:2: unknown configuration key 'bogus.key'", ConfigError);
  CHECK_THROWS_AS(cfg.set_assignment("no equals sign"), ConfigError);
  cfg.set("model.eta", "fast");
  CHECK_THROWS_AS(cfg.get_double("model.eta"), ConfigError);
  cfg.set("coupling.matrix", "0, 1, 1,0");
  CHECK(cfg.get_list("coupling.matrix") == std::vector<double>{0, 1, 1, 0});
}

TEST_CASE("scenario validation") {
  KeyValueConfig cfg;
  CHECK_NOTHROW(build_scenario(cfg));
  cfg.set("integrator.mode", "adaptive");
  CHECK_THROWS_AS(build_scenario(cfg), ConfigError);  // noise must be zero
  cfg.set("integrator.noise_amplitude", "0");
  CHECK_NOTHROW(build_scenario(cfg));
  cfg.set("initial.state", "1, 2");
  CHECK_THROWS_AS(build_scenario(cfg), ConfigError);
  KeyValueConfig other;
  other.set("scan.plane", "omega");
  CHECK_THROWS_AS(build_scenario(other), ConfigError);
}

TEST_CASE("every preset builds and every reproduction target exists") {
  for (const auto& p : presets()) {
    KeyValueConfig cfg;
    cfg.merge_text(p.overrides, p.name);
    CHECK_NOTHROW(build_scenario(cfg));
  }
  for (const char* t : {"table1", "table2", "fig3", "fig4", "fig5a", "fig5b", "fig5c", "fig5d", "fig6",
                        "fig7", "fig8", "fig9", "fig10", "fig11", "fig12", "slowpassage"}) {
    CHECK_NOTHROW(find_preset(t));
  }
  CHECK_THROWS_AS(find_preset("fig99"), ConfigError);
}

TEST_CASE("CSV formatting") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
  const auto d = scratch_dir("csv");
  {
    CsvWriter w(d / "x.csv", "abc", {"a", "b"});
    w.add(1.5).add(std::string_view("q,r"));
    w.end_row();
    w.add(2.0);
    CHECK_THROWS_AS(w.end_row(), Error);
  }
  CHECK(slurp(d / "x.csv").rfind("# manifest abc\na,b\n1.5,\"q,r\"\n", 0) == 0);
}

TEST_CASE("manifest hash covers config and seed only") {
  RunManifest a;
  a.command = "simulate";
  a.config_text = "model.a = 0.8\n";
  a.seed = 1;
  RunManifest b = a;
  b.wall_time_s = 12.0;
  b.outputs = {"x.csv"};
  CHECK(a.hash() == b.hash());
  CHECK(a.hash().size() == 16);
  b.seed = 2;
  CHECK(a.hash() != b.hash());
  b = a;
  b.config_text = "model.a = 0.9\n";
  CHECK(a.hash() != b.hash());
}

TEST_CASE("exit codes") {
  const auto d = scratch_dir("exit").string();
  CHECK(run({"reproduce", "table1", "--out", d}) == 0);
  CHECK(run({"reproduce", "nope", "--out", d}) == 2);
  CHECK(run({"simulate", "--set", "model.bogus=1", "--out", d}) == 2);
  CHECK(run({"simulate", "--set", "integrator.t_end=0", "--out", d}) == 2);
  CHECK(run({"analytic-points", "--set", "coupling.kappa1=0.01", "--out", d}) == 2);
  CHECK(run({"simulate", "--set", "initial.u0=1e5", "--set", "integrator.t_end=1", "--out", d}) == 3);
  CHECK(run({"bogus-command"}) == 2);
}

TEST_CASE("config precedence and deterministic output") {
  const auto d1 = scratch_dir("det1");
  const auto d2 = scratch_dir("det2");
  const auto cfg = d1 / "run.cfg";
  std::ofstream(cfg) << "integrator.t_end = 5\nintegrator.seed = 3\nanalysis.replicas = 2\n";
  for (const auto& d : {d1, d2}) {
    REQUIRE(run({"simulate", "--config", cfg.string(), "--set", "integrator.t_end=4", "--seed", "9",
                 "--out", d.string()}) == 0);
  }
  const std::string resolved = slurp(d1 / "run_config.txt");
  CHECK(resolved.find("integrator.t_end = 4\n") != std::string::npos);
  CHECK(resolved.find("integrator.seed = 9\n") != std::string::npos);
  for (const char* f : {"run_seed9_trajectory.csv", "run_seed10_trajectory.csv"}) {
    const std::string a = slurp(d1 / f);
    REQUIRE(!a.empty());
    CHECK(a == slurp(d2 / f));
    CHECK(a.rfind("# manifest ", 0) == 0);
    CHECK(a.find("\nt,x1,y1,u1,x2,y2,u2,d12\n") != std::string::npos);
  }
  // The written configuration reproduces the run.
  const auto d3 = scratch_dir("det3");
  REQUIRE(run({"simulate", "--config", (d1 / "run_config.txt").string(), "--out", d3.string()}) == 0);
  CHECK(slurp(d3 / "run_seed9_trajectory.csv") == slurp(d1 / "run_seed9_trajectory.csv"));
}
