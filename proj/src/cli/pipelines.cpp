#include "bautin/cli/pipelines.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <optional>

#include "bautin/ensemble.hpp"
#include "bautin/errors.hpp"

namespace bautin::cli {

namespace fs = std::filesystem;

// ---------------------------------------------------------------- statistics

DetZeroResult locate_det_zero(Branch b, const ModelParams& p, const CouplingSpec& k, double u_min,
                              double u_max) {
  const double fold = -1.0 - 2.0 * k.kappa1() * branch_phi(b);
  const double lo = std::max(u_min, fold + 1e-9);
  const auto grid = linspace(lo, u_max, 800);
  auto det_at = [&](double u) {
    const double r = solve_branch_r(u, b, p, k);
    return trace_det(jacobian_block(b, u, r, p, k)).det;
  };
  double d_hi = det_at(grid.back());
  for (std::size_t i = grid.size() - 1; i-- > 0;) {
    const double d_lo = det_at(grid[i]);
    if (d_lo * d_hi < 0.0) return det_zero_bisect(b, grid[i], grid[i + 1], p, k);
    d_hi = d_lo;
  }
  throw NumericError("no sign change of det on the " + std::string(branch_name(b)) + " branch");
}

AnalyticTable analytic_table(const ModelParams& p, const CouplingSpec& k) {
  return {asymptotic_points(p, k), locate_det_zero(Branch::inphase, p, k),
          locate_det_zero(Branch::antiphase, p, k)};
}

TransitionStats transition_stats(const std::vector<Trajectory>& runs, SyncLabel from, SyncLabel to,
                                 double u_limit, const SynchronyOptions& opt) {
  TransitionStats st;
  for (const auto& tr : runs) {
    ++st.runs;
    const auto rep = detect_transitions(tr, opt);
    for (const auto& b : rep.bursts) {
      ++st.bursts;
      for (const auto& ev : b.transitions) {
        if (ev.from == from && ev.to == to) st.transition_u.push_back(ev.u_mean);
      }
      if (b.transitions.size() == 1 && b.transitions[0].from == from &&
          b.transitions[0].to == to && b.transitions[0].u_mean <= u_limit) {
        ++st.qualifying;
      }
    }
  }
  return st;
}

TransitionStats splay_stats(const std::vector<Trajectory>& runs, const SynchronyOptions& opt) {
  TransitionStats st;
  for (const auto& tr : runs) {
    ++st.runs;
    const auto rep = detect_transitions(tr, opt);
    for (const auto& b : rep.bursts) {
      ++st.bursts;
      bool ok = false;
      for (const auto& ev : b.transitions) {
        if (ev.from != SyncLabel::splay || ev.to != SyncLabel::inphase) continue;
        st.transition_u.push_back(ev.u_mean);
        bool low_before = false;
        bool high_after = false;
        for (const auto& w : b.windows) {
          if (w.label == SyncLabel::undefined) continue;
          if (w.t_end <= ev.t && w.order_parameter < 0.2) low_before = true;
          if (w.t_start >= ev.t && w.order_parameter > 0.9) high_after = true;
        }
        ok = ok || (low_before && high_after);
      }
      if (ok) ++st.qualifying;
    }
  }
  return st;
}

BursterProperties burster_properties(const Trajectory& traj, double u_fold) {
  BursterProperties bp;
  const auto r = mean_radius(traj);
  auto segments = segment_bursts(traj);
  if (!segments.empty()) segments.erase(segments.begin());
  bp.bursts = segments.size();
  std::size_t prev_end = 0;
  for (const auto& seg : segments) {
    // Onset: last sample below 0.5 before the burst opens.
    std::size_t i = seg.start;
    while (i > prev_end && r[i - 1] >= 0.5) --i;
    const double quiet = *std::min_element(r.begin() + static_cast<std::ptrdiff_t>(prev_end),
                                           r.begin() + static_cast<std::ptrdiff_t>(seg.start));
    const double peak = *std::max_element(seg.mean_radius.begin(), seg.mean_radius.end());
    if (quiet < 0.1 && peak > 1.0) ++bp.alternating;
    bp.onset_u.push_back(traj.at(i, 2));

    std::size_t umin = seg.start;
    std::size_t fold = seg.end;
    for (std::size_t s = seg.start; s < seg.end; ++s) {
      if (traj.at(s, 2) < traj.at(umin, 2)) umin = s;
      if (fold == seg.end && traj.at(s, 2) < u_fold) fold = s;
    }
    fold = std::min(fold, umin);
    auto last_max_before = [&](std::size_t stop) {
      double last = std::numeric_limits<double>::quiet_NaN();
      for (std::size_t s = seg.start + 1; s <= stop && s + 1 < traj.size(); ++s) {
        const double x = traj.at(s, 0);
        if (x > traj.at(s - 1, 0) && x >= traj.at(s + 1, 0)) last = r[s];
      }
      return last;
    };
    bp.last_spike_r.push_back(last_max_before(fold));
    bp.last_spike_r_umin.push_back(last_max_before(umin));
    prev_end = seg.end;
  }
  return bp;
}

double late_min_radius(const Trajectory& traj) {
  const auto r = mean_radius(traj);
  return *std::min_element(r.begin() + static_cast<std::ptrdiff_t>(r.size() / 2), r.end());
}

StableRange stable_range(const BranchDiagram& d, EquilibriumTag tag) {
  StableRange sr;
  for (std::size_t i = 0; i < d.u_grid.size(); ++i) {
    for (const auto& bp : d.points[i]) {
      if (bp.eq.tag != tag || !is_stable(bp.eq.classification)) continue;
      if (!sr.any) {
        sr = {true, d.u_grid[i], d.u_grid[i]};
      } else {
        sr.u_lo = std::min(sr.u_lo, d.u_grid[i]);
        sr.u_hi = std::max(sr.u_hi, d.u_grid[i]);
      }
    }
  }
  return sr;
}

double mirror_defect(const BranchDiagram& d) {
  double worst = 0.0;
  for (const auto& pts : d.points) {
    for (const auto& a : pts) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& b : pts) {
        const double d0 = a.eq.r_l - b.eq.r_l;
        const double d1 = -a.eq.r_t - b.eq.r_t;
        const double d2 = wrap_phase(-a.eq.phi - b.eq.phi);
        best = std::min(best, std::sqrt(d0 * d0 + d1 * d1 + d2 * d2));
      }
      worst = std::max(worst, best);
    }
  }
  return worst;
}

double region_length(const BoundaryPoint& bp, char label) {
  double acc = 0.0;
  for (const auto& r : bp.regions) {
    if (r.label == label) acc += r.u_hi - r.u_lo;
  }
  return acc;
}

// ---------------------------------------------------------------- helpers

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::vector<Trajectory> run_replicas(const Scenario& sc, std::size_t workers) {
  if (!(sc.integrator.t_end > sc.integrator.t0)) {
    throw ConfigError("empty data: integrator.t_end must be > 0");
  }
  if (sc.scheme == Scheme::adaptive) {
    if (sc.replicas != 1) throw ConfigError("adaptive runs are deterministic; use analysis.replicas = 1");
    return {simulate_network(sc.model, sc.coupling, sc.initial, sc.integrator, Scheme::adaptive)};
  }
  std::vector<std::uint64_t> seeds(sc.replicas);
  std::iota(seeds.begin(), seeds.end(), sc.integrator.rng_seed);
  return integrate_noisy_ensemble(sc.model, sc.coupling, sc.initial, sc.integrator, seeds,
                                  kernels::detect_isa(), workers);
}

void write_trajectory(const fs::path& path, const Trajectory& tr, const std::string& hash) {
  const std::size_t n = tr.dimension / 3;
  std::vector<std::string> header = {"t"};
  for (std::size_t j = 0; j < n; ++j) {
    const auto s = std::to_string(j + 1);
    header.insert(header.end(), {"x" + s, "y" + s, "u" + s});
  }
  std::vector<std::vector<double>> dists;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      header.push_back("d" + std::to_string(i + 1) + std::to_string(j + 1));
      dists.push_back(pairwise_distance(tr, i, j));
    }
  }
  CsvWriter csv(path, hash, header);
  for (std::size_t s = 0; s < tr.size(); ++s) {
    csv.add(tr.times[s]);
    for (double v : tr.state(s)) csv.add(v);
    for (const auto& d : dists) csv.add(d[s]);
    csv.end_row();
  }
}

nlohmann::json report_json(const SynchronyReport& rep) {
  nlohmann::json bursts = nlohmann::json::array();
  for (const auto& b : rep.bursts) {
    nlohmann::json runs = nlohmann::json::array();
    for (const auto& w : b.windows) {
      if (!runs.empty() && runs.back()["label"] == label_name(w.label)) {
        runs.back()["t_end"] = w.t_end;
      } else {
        runs.push_back({{"label", label_name(w.label)}, {"t_start", w.t_start}, {"t_end", w.t_end}});
      }
    }
    nlohmann::json tr = nlohmann::json::array();
    for (const auto& e : b.transitions) {
      tr.push_back({{"t", e.t}, {"u_mean", e.u_mean}, {"from", label_name(e.from)},
                    {"to", label_name(e.to)}});
    }
    bursts.push_back({{"start_sample", b.segment.start},
                      {"end_sample", b.segment.end},
                      {"u_start", b.segment.u_start},
                      {"u_end", b.segment.u_end},
                      {"spike_period", b.spike_period},
                      {"labels", runs},
                      {"transitions", tr}});
  }
  nlohmann::json d = nlohmann::json::array();
  for (const auto& s : rep.distances) {
    d.push_back({{"i", s.i + 1}, {"j", s.j + 1}, {"mean", s.mean}, {"max", s.max}});
  }
  return {{"burst_count", rep.bursts.size()}, {"bursts", bursts}, {"distances", d}};
}

std::string replica_stem(const Scenario& sc, const Trajectory& tr) {
  if (sc.replicas == 1) return sc.prefix;
  return sc.prefix + "_seed" + std::to_string(tr.metadata.seed);
}

nlohmann::json simulate_into(const Scenario& sc, const std::vector<Trajectory>& runs,
                             const RunContext& ctx, RunManifest& manifest, PipelineResult& res) {
  const std::string hash = manifest.hash();
  nlohmann::json replicas = nlohmann::json::array();
  for (const auto& tr : runs) {
    const std::string file = replica_stem(sc, tr) + "_trajectory.csv";
    write_trajectory(ctx.out_dir / file, tr, hash);
    res.outputs.push_back(file);
    nlohmann::json r = {{"seed", tr.metadata.seed}, {"samples", tr.size()}, {"file", file}};
    r["burst_count"] = segment_bursts(tr, sc.analysis.r_hi, sc.analysis.r_lo).size();
    if (sc.coupling.n() >= 2) {
      try {
        r["synchrony"] = report_json(detect_transitions(tr, sc.analysis));
      } catch (const DomainError& e) {
        r["synchrony"] = {{"error", e.what()}};
      }
    }
    replicas.push_back(r);
  }
  return replicas;
}

Check check(std::string name, bool pass, std::string detail) {
  return {std::move(name), pass, std::move(detail)};
}

Check near(const std::string& name, double got, double want, double tol) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "got %.6f, expected %.6f, tolerance %.1e", got, want, tol);
  return {name, std::abs(got - want) <= tol, buf};
}

// Table rows as printed, inphase values first.
struct TableRow {
  double r_in, r_anti, u_in, u_anti;
};

void reproduce_table(bool second, const Scenario& sc, PipelineResult& res) {
  const TableRow asym = second ? TableRow{1.377, 1.3229, -0.2032, -0.4438}
                               : TableRow{1.3229, 1.3771, -0.4438, -0.2032};
  const TableRow numeric = second ? TableRow{1.376, 1.321, -0.2027, -0.4433}
                                  : TableRow{1.3210, 1.376, -0.4433, -0.2027};
  const auto t = analytic_table(sc.model, sc.coupling);
  res.checks.push_back(near("asymptotic r_in", t.asymptotic.r_in, asym.r_in, 1e-4));
  res.checks.push_back(near("asymptotic r_anti", t.asymptotic.r_anti, asym.r_anti, 1e-4));
  res.checks.push_back(near("asymptotic u_in", t.asymptotic.u_in, asym.u_in, 1e-4));
  res.checks.push_back(near("asymptotic u_anti", t.asymptotic.u_anti, asym.u_anti, 1e-4));
  res.checks.push_back(near("det-zero r_in", t.inphase.r, numeric.r_in, 2e-3));
  res.checks.push_back(near("det-zero u_in", t.inphase.u, numeric.u_in, 2e-3));
  res.checks.push_back(near("det-zero r_anti", t.antiphase.r, numeric.r_anti, 2e-3));
  res.checks.push_back(near("det-zero u_anti", t.antiphase.u, numeric.u_anti, 2e-3));
  const auto ei = exact_det_zero(sc.model, sc.coupling, Branch::inphase);
  const auto ea = exact_det_zero(sc.model, sc.coupling, Branch::antiphase);
  res.checks.push_back(near("bisection vs closed form (inphase u)", t.inphase.u, ei.u, 1e-8));
  res.checks.push_back(near("bisection vs closed form (antiphase u)", t.antiphase.u, ea.u, 1e-8));
  res.summary["asymptotic"] = {{"r_in", t.asymptotic.r_in},
                               {"r_anti", t.asymptotic.r_anti},
                               {"u_in", t.asymptotic.u_in},
                               {"u_anti", t.asymptotic.u_anti}};
  res.summary["det_zero"] = {{"r_in", t.inphase.r},
                             {"u_in", t.inphase.u},
                             {"r_anti", t.antiphase.r},
                             {"u_anti", t.antiphase.u}};
}

void reproduce_pair(const Scenario& sc, const std::vector<Trajectory>& runs, PipelineResult& res) {
  const bool in_first = sc.coupling.kappa2() > 0.0;
  const SyncLabel from = in_first ? SyncLabel::inphase : SyncLabel::antiphase;
  const SyncLabel to = in_first ? SyncLabel::antiphase : SyncLabel::inphase;
  const Branch start = in_first ? Branch::inphase : Branch::antiphase;
  const double u_pred = locate_det_zero(start, sc.model, sc.coupling).u;
  const auto st = transition_stats(runs, from, to, u_pred, sc.analysis);
  res.summary["predicted_u"] = u_pred;
  res.summary["bursts"] = st.bursts;
  res.summary["qualifying_bursts"] = st.qualifying;
  res.summary["transition_u"] = st.transition_u;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "%zu of %zu bursts over %zu seeds have exactly one %s -> %s transition at u <= %.4f",
                st.qualifying, st.bursts, st.runs, std::string(label_name(from)).c_str(),
                std::string(label_name(to)).c_str(), u_pred);
  res.checks.push_back(check("seeds >= 10", st.runs >= 10, std::to_string(st.runs) + " seeds"));
  res.checks.push_back(check("qualifying fraction >= 0.9", st.bursts > 0 && st.fraction() >= 0.9, buf));
}

void reproduce_branch(std::string_view target, const Scenario& sc, const BranchDiagram& d,
                      PipelineResult& res) {
  const auto in = stable_range(d, EquilibriumTag::inphase);
  const auto anti = stable_range(d, EquilibriumTag::antiphase);
  res.summary["inphase_stable"] = {{"any", in.any}, {"u_lo", in.u_lo}, {"u_hi", in.u_hi}};
  res.summary["antiphase_stable"] = {{"any", anti.any}, {"u_lo", anti.u_lo}, {"u_hi", anti.u_hi}};
  const bool in_late = sc.coupling.kappa2() < 0.0;  // inphase holds at low u
  const double lo = std::max(in.u_lo, anti.u_lo);
  const double hi = std::min(in.u_hi, anti.u_hi);
  res.checks.push_back(check("both symmetric branches have stable stretches", in.any && anti.any,
                             "inphase [" + fmt("%.3f", in.u_lo) + ", " + fmt("%.3f", in.u_hi) +
                                 "], antiphase [" + fmt("%.3f", anti.u_lo) + ", " +
                                 fmt("%.3f", anti.u_hi) + "]"));
  res.checks.push_back(check("bistable overlap contains u = -0.32", lo <= -0.32 && -0.32 <= hi,
                             "overlap [" + fmt("%.3f", lo) + ", " + fmt("%.3f", hi) + "]"));
  const bool order = in_late ? (anti.u_hi > in.u_hi && in.u_lo < anti.u_lo)
                             : (in.u_hi > anti.u_hi && anti.u_lo < in.u_lo);
  res.checks.push_back(check(in_late ? "antiphase stable early, inphase late"
                                     : "inphase stable early, antiphase late",
                             order, std::string(target)));
  const double defect = mirror_defect(d);
  res.checks.push_back(check("equilibria closed under (r_t, phi) -> (-r_t, -phi)", defect < 1e-8,
                             "max defect " + fmt("%.2e", defect)));
}

std::vector<char> labels_of(const BoundaryPoint& bp) {
  std::vector<char> out;
  for (const auto& r : bp.regions) out.push_back(r.label);
  return out;
}

bool has_label(const BoundaryPoint& bp, char c) {
  const auto l = labels_of(bp);
  return std::find(l.begin(), l.end(), c) != l.end();
}

// Labels present above the lower fold of both branches.
bool only_label_in_burst(const BoundaryPoint& bp, char want, double u_floor) {
  for (const auto& r : bp.regions) {
    if (r.u_hi <= u_floor) continue;
    if (r.label != want) return false;
  }
  return true;
}

void reproduce_boundary(std::string_view target, const Scenario& sc, const RegionBoundary& rb,
                        PipelineResult& res) {
  const auto& pts = rb.points;
  if (pts.empty()) throw ConfigError("scan produced no points");
  if (target == "fig6") {
    bool monotone = true;
    for (std::size_t i = 1; i < pts.size(); ++i) {
      monotone = monotone && region_length(pts[i], 'b') <= region_length(pts[i - 1], 'b') + 1e-9;
    }
    const double w0 = region_length(pts.front(), 'b');
    const double w1 = region_length(pts.back(), 'b');
    res.checks.push_back(check("bistable band narrows as sigma grows", monotone && w1 < w0,
                               "width " + fmt("%.4f", w0) + " -> " + fmt("%.4f", w1)));
  } else if (target == "fig7") {
    std::vector<double> centres;
    for (const auto& bp : pts) {
      for (const auto& r : bp.regions) {
        if (r.label == 'b') centres.push_back(0.5 * (r.u_lo + r.u_hi));
      }
    }
    bool monotone = centres.size() == pts.size();
    for (std::size_t i = 1; monotone && i < centres.size(); ++i) {
      monotone = centres[i] > centres[i - 1];
    }
    res.checks.push_back(check("bistable band shifts along u with r_m", monotone,
                               centres.empty() ? "no band"
                                               : "centre " + fmt("%.4f", centres.front()) + " -> " +
                                                     fmt("%.4f", centres.back())));
  } else if (target == "fig8") {
    const double floor = -1.0 + 2.0 * std::abs(pts.front().lambda);
    res.checks.push_back(check("strongly inhibitory kappa1: antiphase only over the burst",
                               only_label_in_burst(pts.front(), 'a', floor),
                               "kappa1 = " + fmt("%.3f", pts.front().lambda)));
    bool weak_inhibitory_b = false;
    for (const auto& bp : pts) weak_inhibitory_b = weak_inhibitory_b || (bp.lambda < 0 && has_label(bp, 'b'));
    res.checks.push_back(check("bistable band persists for weak inhibitory kappa1", weak_inhibitory_b, ""));
  } else if (target == "fig9") {
    bool excitatory_b = false;
    for (const auto& bp : pts) excitatory_b = excitatory_b || (bp.lambda > 0 && has_label(bp, 'b'));
    res.checks.push_back(check("bistable band extends above kappa1 = 0", excitatory_b, ""));
    const double floor = -1.0 + 2.0 * std::abs(pts.back().lambda);
    res.checks.push_back(check("strongly excitatory kappa1: inphase only over the burst",
                               only_label_in_burst(pts.back(), 'c', floor),
                               "kappa1 = " + fmt("%.3f", pts.back().lambda)));
  } else if (target == "fig10" || target == "fig11") {
    const char want = target == "fig10" ? 'c' : 'a';
    const double floor = -1.0 + 2.0 * std::abs(sc.coupling.kappa1());
    bool ok = true;
    for (const auto& bp : pts) {
      if (bp.lambda < 0.0) ok = ok && only_label_in_burst(bp, want, floor);
    }
    res.checks.push_back(check(std::string("negative kappa2: region ") + want + " only", ok, ""));

    // (kappa1, kappa2) -> (-kappa1, -kappa2) exchanges the two branches.
    std::vector<double> flipped;
    for (auto it = pts.rbegin(); it != pts.rend(); ++it) flipped.push_back(-it->lambda);
    const CouplingSpec mk(-sc.coupling.kappa1(), sc.coupling.kappa2(), sc.coupling.n());
    const auto mirror = boundary_scan(sc.scan.plane, flipped, sc.model, mk, sc.scan.window, 1);
    double worst = 0.0;
    bool same_shape = true;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto& r0 = pts[i].regions;
      const auto& r1 = mirror.points[pts.size() - 1 - i].regions;
      same_shape = same_shape && r0.size() == r1.size();
      for (std::size_t j = 0; same_shape && j < r0.size(); ++j) {
        const char swapped = r1[j].label == 'a' ? 'c' : r1[j].label == 'c' ? 'a' : r1[j].label;
        same_shape = swapped == r0[j].label;
        worst = std::max({worst, std::abs(r0[j].u_lo - r1[j].u_lo), std::abs(r0[j].u_hi - r1[j].u_hi)});
      }
    }
    res.checks.push_back(check("sign flip of (kappa1, kappa2) swaps regions a and c",
                               same_shape && worst < 1e-6, "max boundary shift " + fmt("%.2e", worst)));
  }
}

}  // namespace

// ---------------------------------------------------------------- pipelines

PipelineResult run_simulate(const RunContext& ctx, RunManifest& manifest) {
  const Scenario sc = build_scenario(ctx.config);
  PipelineResult res;
  const auto runs = run_replicas(sc, ctx.workers);
  res.summary["replicas"] = simulate_into(sc, runs, ctx, manifest, res);
  res.summary["n"] = sc.coupling.n();
  return res;
}

namespace {

struct ScanOutcome {
  std::optional<BranchDiagram> branch;
  std::optional<RegionBoundary> boundary;
};

ScanOutcome scan_into(const RunContext& ctx, RunManifest& manifest, PipelineResult& res) {
  const Scenario sc = build_scenario(ctx.config);
  ScanOutcome out;
  const std::string hash = manifest.hash();
  if (sc.scan.kind == "branch") {
    const auto d = branch_diagram(sc.scan.window.u_min, sc.scan.window.u_max, sc.scan.window.n_u,
                                  sc.model, sc.coupling, sc.scan.seeds, ctx.workers);
    const std::string file = sc.prefix + "_branches.csv";
    CsvWriter csv(ctx.out_dir / file, hash,
                  {"u", "branch", "tag", "r_l", "r_t", "phi", "classification", "stable", "residual"});
    for (std::size_t i = 0; i < d.u_grid.size(); ++i) {
      for (const auto& bp : d.points[i]) {
        csv.add(d.u_grid[i])
            .add(bp.branch_id)
            .add(tag_name(bp.eq.tag))
            .add(bp.eq.r_l)
            .add(bp.eq.r_t)
            .add(bp.eq.phi)
            .add(classification_name(bp.eq.classification))
            .add(std::string_view(is_stable(bp.eq.classification) ? "1" : "0"))
            .add(bp.eq.residual);
        csv.end_row();
      }
    }
    res.outputs.push_back(file);
    res.summary["branch_count"] = d.branch_count;
    res.summary["u_points"] = d.u_grid.size();
    res.summary["mirror_defect"] = mirror_defect(d);
    out.branch = std::move(d);
    return out;
  }
  if (sc.scan.lambda_n == 0) throw ConfigError("scan.lambda_n must be >= 1");
  const auto lambdas = linspace(sc.scan.lambda_min, sc.scan.lambda_max, sc.scan.lambda_n);
  const auto rb = boundary_scan(sc.scan.plane, lambdas, sc.model, sc.coupling, sc.scan.window,
                                ctx.workers);
  const std::string bfile = sc.prefix + "_boundary.csv";
  const std::string rfile = sc.prefix + "_regions.csv";
  {
    CsvWriter csv(ctx.out_dir / bfile, hash, {"lambda", "u_in", "u_anti"});
    for (const auto& bp : rb.points) {
      csv.add(bp.lambda);
      bp.u_in ? csv.add(*bp.u_in) : csv.add_empty();
      bp.u_anti ? csv.add(*bp.u_anti) : csv.add_empty();
      csv.end_row();
    }
  }
  {
    CsvWriter csv(ctx.out_dir / rfile, hash, {"lambda", "u_lo", "u_hi", "label"});
    for (const auto& bp : rb.points) {
      for (const auto& r : bp.regions) {
        csv.add(bp.lambda).add(r.u_lo).add(r.u_hi).add(std::string_view(&r.label, 1));
        csv.end_row();
      }
    }
  }
  res.outputs.insert(res.outputs.end(), {bfile, rfile});
  res.summary["plane"] = plane_name(sc.scan.plane);
  res.summary["lambda_points"] = rb.points.size();
  std::size_t gaps = 0;
  for (const auto& bp : rb.points) gaps += (!bp.u_in) + (!bp.u_anti);
  res.summary["gaps"] = gaps;
  out.boundary = std::move(rb);
  return out;
}

}  // namespace

PipelineResult run_scan(const RunContext& ctx, RunManifest& manifest) {
  PipelineResult res;
  scan_into(ctx, manifest, res);
  return res;
}

PipelineResult run_analytic(const RunContext& ctx, RunManifest& manifest) {
  const Scenario sc = build_scenario(ctx.config);
  PipelineResult res;
  const auto t = analytic_table(sc.model, sc.coupling);
  const auto ei = exact_det_zero(sc.model, sc.coupling, Branch::inphase);
  const auto ea = exact_det_zero(sc.model, sc.coupling, Branch::antiphase);
  res.summary = {{"asymptotic",
                  {{"r_in", t.asymptotic.r_in},
                   {"r_anti", t.asymptotic.r_anti},
                   {"u_in", t.asymptotic.u_in},
                   {"u_anti", t.asymptotic.u_anti}}},
                 {"exact", {{"r_in", ei.r}, {"u_in", ei.u}, {"r_anti", ea.r}, {"u_anti", ea.u}}},
                 {"bisection",
                  {{"r_in", t.inphase.r},
                   {"u_in", t.inphase.u},
                   {"r_anti", t.antiphase.r},
                   {"u_anti", t.antiphase.u}}}};
  const std::string file = sc.prefix + "_analytic.json";
  res.outputs.push_back(file);
  nlohmann::json doc = res.summary;
  doc["manifest_hash"] = manifest.hash();
  write_json(ctx.out_dir / file, doc);
  return res;
}

PipelineResult run_reproduce(std::string_view target, const RunContext& ctx,
                             RunManifest& manifest) {
  const Preset& preset = find_preset(target);
  const Scenario sc = build_scenario(ctx.config);
  PipelineResult res;
  res.summary["target"] = target;
  res.summary["description"] = preset.description;

  if (target == "table1" || target == "table2") {
    reproduce_table(target == "table2", sc, res);
    return res;
  }
  if (preset.kind == PresetKind::scan) {
    PipelineResult scan;
    const ScanOutcome o = scan_into(ctx, manifest, scan);
    res.outputs = scan.outputs;
    res.summary["scan"] = scan.summary;
    if (o.branch) {
      reproduce_branch(target, sc, *o.branch, res);
    } else {
      reproduce_boundary(target, sc, *o.boundary, res);
    }
    return res;
  }

  if (target == "fig2") {
    const auto runs = run_replicas(sc, ctx.workers);
    res.summary["replicas"] = simulate_into(sc, runs, ctx, manifest, res);
    const auto bp = burster_properties(runs.front());
    res.summary["onset_u"] = bp.onset_u;
    res.summary["last_spike_r"] = bp.last_spike_r;
    res.summary["last_spike_r_before_u_minimum"] = bp.last_spike_r_umin;
    const double min_onset = bp.onset_u.empty() ? -1.0 : *std::min_element(bp.onset_u.begin(), bp.onset_u.end());
    double min_last = bp.last_spike_r.empty() ? 0.0 : 1e9;
    for (double v : bp.last_spike_r) min_last = std::isnan(v) ? 0.0 : std::min(min_last, v);
    res.checks.push_back(check("alternating active and quiescent phases",
                               bp.bursts >= 3 && bp.alternating == bp.bursts,
                               std::to_string(bp.alternating) + " of " + std::to_string(bp.bursts) +
                                   " bursts"));
    res.checks.push_back(check("spike onset at u > 0 (delayed Hopf)", !bp.onset_u.empty() && min_onset > 0.0,
                               "lowest onset u " + fmt("%.4f", min_onset)));
    res.checks.push_back(check("last spike before the fold has r >= 0.95", min_last >= 0.95,
                               "lowest last-spike r " + fmt("%.4f", min_last)));
    Scenario tonic = sc;
    tonic.model = sc.model.with_a(1.2);
    const auto tr = simulate_network(tonic.model, tonic.coupling, tonic.initial, tonic.integrator,
                                     Scheme::adaptive);
    const double rmin = late_min_radius(tr);
    res.checks.push_back(check("a = 1.2 spikes tonically", rmin > 0.5,
                               "late minimum radius " + fmt("%.4f", rmin)));
    return res;
  }

  const auto runs = run_replicas(sc, ctx.workers);
  res.summary["replicas"] = simulate_into(sc, runs, ctx, manifest, res);
  if (target == "fig12") {
    const auto st = splay_stats(runs, sc.analysis);
    res.summary["bursts"] = st.bursts;
    res.summary["qualifying_bursts"] = st.qualifying;
    res.checks.push_back(check("seeds >= 5", st.runs >= 5, std::to_string(st.runs) + " seeds"));
    res.checks.push_back(check("splay -> inphase in >= 90% of bursts",
                               st.bursts > 0 && st.fraction() >= 0.9,
                               std::to_string(st.qualifying) + " of " + std::to_string(st.bursts)));
  } else if (target == "slowpassage") {
    const double u_in = locate_det_zero(Branch::inphase, sc.model, sc.coupling).u;
    const double du = slow_passage_offset(detect_transitions(runs.front(), sc.analysis), u_in,
                                          SyncLabel::inphase, SyncLabel::antiphase);
    double du_low = 0.0;
    std::size_t counted = 0;
    for (const auto& tr : runs) {
      du_low += slow_passage_offset(detect_transitions(tr, sc.analysis), u_in, SyncLabel::inphase,
                                    SyncLabel::antiphase);
      ++counted;
    }
    du_low /= static_cast<double>(counted);
    Scenario loud = sc;
    loud.integrator.noise_amplitude = 1e-3;
    const auto loud_runs = run_replicas(loud, ctx.workers);
    double du_high = 0.0;
    for (const auto& tr : loud_runs) {
      du_high += slow_passage_offset(detect_transitions(tr, sc.analysis), u_in, SyncLabel::inphase,
                                     SyncLabel::antiphase);
    }
    du_high /= static_cast<double>(loud_runs.size());
    res.summary["u_in"] = u_in;
    res.summary["offset_noise_1e-5"] = du_low;
    res.summary["offset_noise_1e-3"] = du_high;
    res.summary["offset_first_seed"] = du;
    res.checks.push_back(check("transition delayed past u_in", du_low < 0.0,
                               "mean offset " + fmt("%.4f", du_low)));
    res.checks.push_back(check("larger noise shrinks the delay", std::abs(du_high) < std::abs(du_low),
                               "|" + fmt("%.4f", du_high) + "| < |" + fmt("%.4f", du_low) + "|"));
  } else {
    reproduce_pair(sc, runs, res);
  }
  return res;
}

}  // namespace bautin::cli
