#include "bautin/cli/commands.hpp"

#include <chrono>
#include <functional>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bautin/cli/pipelines.hpp"
#include "bautin/errors.hpp"

namespace bautin::cli {

namespace {

namespace fs = std::filesystem;

struct GlobalOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  std::size_t workers = 1;
  std::vector<std::string> sets;
};

// defaults < preset < config file < --set < --seed
KeyValueConfig resolve(const GlobalOptions& g, const Preset* preset) {
  KeyValueConfig cfg;
  if (preset) {
    cfg.merge_text(preset->overrides, "preset " + preset->name);
    cfg.set("output.prefix", preset->name);
  }
  if (!g.config_path.empty()) cfg.merge_file(g.config_path);
  for (const auto& s : g.sets) cfg.set_assignment(s);
  if (g.seed) cfg.set("integrator.seed", std::to_string(*g.seed));
  return cfg;
}


int execute(const std::string& command, RunContext ctx, const std::function<PipelineResult(const RunContext&, RunManifest&)>& run,
            bool report) {
  const auto start = std::chrono::steady_clock::now();
  fs::create_directories(ctx.out_dir);
  // Validate before any output is written.
  build_scenario(ctx.config);
  RunManifest manifest;
  manifest.command = command;
  manifest.config_text = ctx.config.to_text();
  manifest.seed = ctx.config.get_u64("integrator.seed");
  ctx.command = command;

  PipelineResult res = run(ctx, manifest);

  const std::string prefix = ctx.config.get("output.prefix");
  const std::string config_file = prefix + "_config.txt";
  write_text(ctx.out_dir / config_file, "# manifest " + manifest.hash() + "\n" + manifest.config_text);
  res.outputs.push_back(config_file);

  const std::string summary_file = prefix + (report ? "_report.json" : "_summary.json");
  res.outputs.push_back(summary_file);
  manifest.outputs = res.outputs;
  manifest.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  nlohmann::json doc;
  doc["manifest"] = manifest.to_json();
  doc["summary"] = res.summary;
  bool all_pass = true;
  if (report) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : res.checks) {
      checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
      all_pass = all_pass && c.pass;
      std::cout << (c.pass ? "PASS  " : "FAIL  ") << c.name;
      if (!c.detail.empty()) std::cout << "  (" << c.detail << ")";
      std::cout << '\n';
    }
    doc["checks"] = checks;
    doc["pass"] = all_pass;
  }
  write_json(ctx.out_dir / summary_file, doc);
  if (!report) std::cout << res.summary.dump(2) << '\n';
  std::cerr << "wrote " << res.outputs.size() << " files to " << ctx.out_dir.string() << " ("
            << manifest.hash() << ")\n";
  return all_pass ? 0 : 1;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Coupled Bautin-type elliptic bursters: simulation, fast-subsystem stability and synchrony analysis"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--config", g.config_path, "key = value configuration file")->check(CLI::ExistingFile);
  app.add_option("--seed", g.seed, "noise seed (overrides integrator.seed)");
  app.add_option("--out", g.out_dir, "output directory")->capture_default_str();
  app.add_option("--workers", g.workers, "worker threads, 0 for all cores")->capture_default_str();
  app.add_option("--set", g.sets, "override one key, key=value (repeatable)")->allow_extra_args(false);

  std::string sim_preset, scan_preset, analytic_preset = "table1", target, shown;
  auto* sim = app.add_subcommand("simulate", "integrate the network and write trajectories");
  sim->add_option("--preset", sim_preset, "start from a named preset");
  auto* scan = app.add_subcommand("scan", "branch diagram or stability boundaries of the fast subsystem");
  scan->add_option("--preset", scan_preset, "start from a named preset");
  auto* repro = app.add_subcommand("reproduce", "run a preset and compare against expected values");
  repro->add_option("target", target, "preset name")->required();
  auto* analytic = app.add_subcommand("analytic-points", "asymptotic and det-zero points (kappa1 = 0)");
  analytic->add_option("--preset", analytic_preset, "start from a named preset")->capture_default_str();
  auto* list = app.add_subcommand("presets", "list presets, or print one preset's overrides");
  list->add_option("name", shown, "preset name");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    auto preset_ptr = [](const std::string& name) -> const Preset* {
      return name.empty() ? nullptr : &find_preset(name);
    };
    RunContext ctx;
    ctx.out_dir = g.out_dir;
    ctx.workers = g.workers;

    if (*list) {
      if (shown.empty()) {
        for (const auto& p : presets()) {
          std::cout << p.name << "\t" << kind_name(p.kind) << "\t" << p.description << '\n';
        }
      } else {
        std::cout << find_preset(shown).overrides;
      }
      return 0;
    }
    if (*sim) {
      ctx.config = resolve(g, preset_ptr(sim_preset));
      return execute("simulate", std::move(ctx), run_simulate, false);
    }
    if (*scan) {
      ctx.config = resolve(g, preset_ptr(scan_preset));
      return execute("scan", std::move(ctx), run_scan, false);
    }
    if (*analytic) {
      ctx.config = resolve(g, preset_ptr(analytic_preset));
      return execute("analytic-points", std::move(ctx), run_analytic, false);
    }
    const Preset& p = find_preset(target);
    ctx.config = resolve(g, &p);
    auto run = [&](const RunContext& c, RunManifest& m) { return run_reproduce(target, c, m); };
    return execute("reproduce " + target, std::move(ctx), run, true);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace bautin::cli
