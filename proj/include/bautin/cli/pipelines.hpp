#pragma once

// End-to-end pipelines behind the subcommands, and the trajectory and
// diagram statistics that reproduction reports compare against.

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "bautin/cli/config.hpp"
#include "bautin/cli/output.hpp"
#include "bautin/cli/presets.hpp"
#include "bautin/scan.hpp"
#include "bautin/stability.hpp"
#include "bautin/synchrony.hpp"

namespace bautin::cli {

struct RunContext {
  std::filesystem::path out_dir = ".";
  std::size_t workers = 1;
  std::string command;
  KeyValueConfig config;
};

struct Check {
  std::string name;
  bool pass;
  std::string detail;
};

struct PipelineResult {
  nlohmann::json summary;
  std::vector<Check> checks;
  std::vector<std::string> outputs;
};

/// Trajectory CSV per replica plus a JSON summary. Throws ConfigError for an
/// empty time span.
PipelineResult run_simulate(const RunContext& ctx, RunManifest& manifest);
/// Branch CSV or boundary and region CSVs plus a JSON summary.
PipelineResult run_scan(const RunContext& ctx, RunManifest& manifest);
/// Asymptotic and exact det-zero points (kappa1 must be 0).
PipelineResult run_analytic(const RunContext& ctx, RunManifest& manifest);
/// Runs the preset pipeline for `target` and appends its checks. The caller
/// has already applied the preset to ctx.config.
PipelineResult run_reproduce(std::string_view target, const RunContext& ctx, RunManifest& manifest);

// ---- statistics shared with the acceptance suite ----

/// Highest-u sign change of det along the branch in [u_min, u_max], refined
/// by det_zero_bisect. Throws NumericError when det keeps its sign.
DetZeroResult locate_det_zero(Branch b, const ModelParams& p, const CouplingSpec& k,
                              double u_min = -0.999, double u_max = 0.999);

struct AnalyticTable {
  AsymptoticPoints asymptotic;
  DetZeroResult inphase;
  DetZeroResult antiphase;
};

AnalyticTable analytic_table(const ModelParams& p, const CouplingSpec& k);

struct TransitionStats {
  std::size_t runs = 0;
  std::size_t bursts = 0;
  std::size_t qualifying = 0;
  std::vector<double> transition_u;  // u of each matching transition
  double fraction() const { return bursts ? static_cast<double>(qualifying) / bursts : 0.0; }
};

/// A burst qualifies when it contains exactly one persistent transition,
/// from -> to, at u <= u_limit.
TransitionStats transition_stats(const std::vector<Trajectory>& runs, SyncLabel from, SyncLabel to,
                                 double u_limit, const SynchronyOptions& opt);

/// A burst qualifies when it has a splay -> inphase transition, a window with
/// order parameter < 0.2 before it and a window with order parameter > 0.9
/// after it.
TransitionStats splay_stats(const std::vector<Trajectory>& runs, const SynchronyOptions& opt);

struct BursterProperties {
  std::size_t bursts = 0;
  std::size_t alternating = 0;  // bursts preceded by r < 0.1 and reaching r > 1
  std::vector<double> onset_u;       // u at the first upward crossing of r = 0.5
  std::vector<double> last_spike_r;  // r at the last x maximum before u passes u_fold
  std::vector<double> last_spike_r_umin;  // same, before the u minimum instead
};

/// Single-burster trajectory analysis; the first burst is ignored as transient.
/// u_fold is the fold of the upper equilibrium branch of the fast subsystem.
BursterProperties burster_properties(const Trajectory& traj, double u_fold = -1.0);

/// Minimum radius over the second half of the record.
double late_min_radius(const Trajectory& traj);

/// Stable u-intervals of the tagged symmetric equilibria in a diagram:
/// [min u, max u] over stable points with the tag (empty when none).
struct StableRange {
  bool any = false;
  double u_lo = 0.0;
  double u_hi = 0.0;
};
StableRange stable_range(const BranchDiagram& d, EquilibriumTag tag);

/// Largest distance from any equilibrium's mirror image (r_t, phi) ->
/// (-r_t, -phi) to its nearest listed equilibrium at the same u.
double mirror_defect(const BranchDiagram& d);

/// Total length of regions with the given label.
double region_length(const BoundaryPoint& bp, char label);

}  // namespace bautin::cli
