// Acceptance checks, one line per criterion:
//   bautin_acceptance [ID ...]     IDs 1..10, 4s and 5s; all when none given
// Exit status is 0 only when every requested check passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "bautin/cli/config.hpp"
#include "bautin/cli/pipelines.hpp"
#include "bautin/cli/presets.hpp"
#include "bautin/constrained.hpp"
#include "bautin/ensemble.hpp"
#include "bautin/scan.hpp"
#include "bautin/stability.hpp"

using namespace bautin;
using namespace bautin::cli;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Scenario preset_scenario(const std::string& name) {
  KeyValueConfig cfg;
  cfg.merge_text(find_preset(name).overrides, name);
  return build_scenario(cfg);
}

std::vector<Trajectory> run_seeds(const Scenario& sc) {
  std::vector<std::uint64_t> seeds(sc.replicas);
  for (std::size_t i = 0; i < seeds.size(); ++i) seeds[i] = sc.integrator.rng_seed + i;
  return integrate_noisy_ensemble(sc.model, sc.coupling, sc.initial, sc.integrator, seeds,
                                  kernels::detect_isa(), 0);
}

// ---- 1, 2: tables

Outcome table(const std::string& name, bool swapped) {
  const auto t0 = Clock::now();
  const Scenario sc = preset_scenario(name);
  const auto t = analytic_table(sc.model, sc.coupling);
  double asym[4] = {1.3229, 1.3771, -0.4438, -0.2032};
  double bisect[4] = {1.321416, 1.375841, -0.443274, -0.202663};
  double numeric[4] = {1.3210, 1.376, -0.4433, -0.2027};
  if (swapped) {
    for (double* row : {asym, bisect, numeric}) {
      std::swap(row[0], row[1]);
      std::swap(row[2], row[3]);
    }
  }
  const double got_a[4] = {t.asymptotic.r_in, t.asymptotic.r_anti, t.asymptotic.u_in,
                           t.asymptotic.u_anti};
  const double got_n[4] = {t.inphase.r, t.antiphase.r, t.inphase.u, t.antiphase.u};
  double err_a = 0.0, err_b = 0.0, err_n = 0.0;
  for (int i = 0; i < 4; ++i) {
    err_a = std::max(err_a, std::abs(got_a[i] - asym[i]));
    err_b = std::max(err_b, std::abs(got_n[i] - bisect[i]));
    err_n = std::max(err_n, std::abs(got_n[i] - numeric[i]));
  }
  const double dt = seconds_since(t0);
  // Bisection reference values are quoted to 6 decimals.
  const bool pass = err_a < 1e-4 && err_b < 1e-6 && err_n < 2e-3 && dt < 1.0;
  return {pass, fmt("asymptotic (%.6f, %.6f, %.6f, %.6f) max err %.1e [tol 1e-4]; det zero "
                    "(%.6f, %.6f)/(%.6f, %.6f) err vs quoted %.1e [tol 1e-6], vs table %.1e [tol 2e-3]; %.3f s",
                    got_a[0], got_a[1], got_a[2], got_a[3], err_a, got_n[0], got_n[2], got_n[1], got_n[3],
                    err_b, err_n, dt)};
}

// ---- 3: bistability along the fig5a branches

Outcome bistability() {
  const auto t0 = Clock::now();
  const ModelParams p(3.0, 0.8, 0.05, 3.0, 1.35);
  const CouplingSpec k(0.001, 0.2, 2);
  struct Expect {
    double u;
    bool in, anti;
  };
  bool pass = true;
  std::string detail;
  for (const Expect e : {Expect{-0.32, true, true}, Expect{-0.1, true, false},
                         Expect{-0.6, false, true}}) {
    const auto ci = classify_branch(Branch::inphase, e.u, p, k);
    const auto ca = classify_branch(Branch::antiphase, e.u, p, k);
    // Independent check: eigenvalues of the full three-dimensional fast Jacobian.
    bool num_in = false, num_anti = false;
    for (const auto& eq : find_fast_equilibria(e.u, p, k).equilibria) {
      if (eq.tag == EquilibriumTag::inphase) num_in = is_stable(eq.classification);
      if (eq.tag == EquilibriumTag::antiphase) num_anti = is_stable(eq.classification);
    }
    const bool ok = is_stable(ci) == e.in && is_stable(ca) == e.anti && num_in == e.in &&
                    num_anti == e.anti;
    pass = pass && ok;
    detail += fmt("u=%.2f in=%s anti=%s; ", e.u, std::string(classification_name(ci)).c_str(),
                  std::string(classification_name(ca)).c_str());
  }
  const double dt = seconds_since(t0);
  pass = pass && dt < 1.0;
  return {pass, detail + fmt("%.3f s", dt)};
}

// ---- 4, 5: within-burst transitions of the pair

Outcome pair_transitions(const std::string& name, SyncLabel from, SyncLabel to, Branch start) {
  const auto t0 = Clock::now();
  const Scenario sc = preset_scenario(name);
  const double u_pred = locate_det_zero(start, sc.model, sc.coupling).u;
  const auto runs = run_seeds(sc);
  const auto st = transition_stats(runs, from, to, u_pred, sc.analysis);
  const double per_seed = seconds_since(t0) / static_cast<double>(runs.size());
  double u_med = std::numeric_limits<double>::quiet_NaN();
  if (!st.transition_u.empty()) {
    auto v = st.transition_u;
    std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
    u_med = v[v.size() / 2];
  }
  // Bursts without any persistent transition, by their single label.
  std::size_t still_from = 0, still_to = 0;
  for (const auto& tr : runs) {
    for (const auto& b : detect_transitions(tr, sc.analysis).bursts) {
      if (!b.transitions.empty()) continue;
      for (const auto& w : b.windows) {
        if (w.label == from) { ++still_from; break; }
        if (w.label == to) { ++still_to; break; }
      }
    }
  }
  const bool pass = st.runs >= 10 && st.bursts > 0 && st.fraction() >= 0.9 && per_seed < 120.0;
  return {pass, fmt("%s: %zu/%zu bursts (%.0f%%) over %zu seeds with one %s->%s at u <= %.4f "
                    "[need >= 90%%]; %zu matching events, median u %.3f; no transition: %zu %s, "
                    "%zu %s; %.2f s per seed",
                    name.c_str(), st.qualifying, st.bursts, 100.0 * st.fraction(), st.runs,
                    std::string(label_name(from)).c_str(), std::string(label_name(to)).c_str(),
                    u_pred, st.transition_u.size(), u_med, still_from,
                    std::string(label_name(from)).c_str(), still_to,
                    std::string(label_name(to)).c_str(), per_seed)};
}

// ---- 6: splay to inphase for three bursters

Outcome splay() {
  const Scenario sc = preset_scenario("fig12");
  const auto runs = run_seeds(sc);
  const auto st = splay_stats(runs, sc.analysis);
  const bool pass = st.runs >= 5 && st.bursts > 0 && st.fraction() >= 0.9;
  return {pass, fmt("%zu/%zu bursts over %zu seeds with splay->inphase and order parameter "
                    "< 0.2 before, > 0.9 after [need >= 90%%]",
                    st.qualifying, st.bursts, st.runs)};
}

// ---- 7: single burster

Outcome single_burster() {
  const auto t0 = Clock::now();
  const Scenario sc = preset_scenario("fig2");
  const auto tr = simulate_network(sc.model, sc.coupling, sc.initial, sc.integrator, Scheme::adaptive);
  const auto bp = burster_properties(tr);
  const auto tonic = simulate_network(sc.model.with_a(1.2), sc.coupling, sc.initial, sc.integrator,
                                      Scheme::adaptive);
  const double rmin = late_min_radius(tonic);
  double onset = bp.onset_u.empty() ? -1.0 : bp.onset_u.front();
  for (double u : bp.onset_u) onset = std::min(onset, u);
  double last = bp.last_spike_r.empty() ? 0.0 : 1e9;
  for (double r : bp.last_spike_r) last = std::isnan(r) ? 0.0 : std::min(last, r);
  const double dt = seconds_since(t0);
  const bool pass = bp.bursts >= 3 && bp.alternating == bp.bursts && onset > 0.0 && last >= 0.95 &&
                    rmin > 0.5 && dt < 30.0;
  return {pass, fmt("%zu/%zu bursts alternate; min onset u %.4f [> 0]; min last-spike r %.4f "
                    "[>= 0.95]; a=1.2 late min r %.4f [> 0.5, tonic]; %.2f s",
                    bp.alternating, bp.bursts, onset, last, rmin, dt)};
}

// ---- 8: Jacobian blocks against central differences

Outcome jacobian_fidelity() {
  const auto t0 = Clock::now();
  const ModelParams p(3.0, 0.8, 0.05, 3.0, 1.35);
  double worst = 0.0;
  for (double u : linspace(-0.95, 0.9, 10)) {
    for (double k2 : linspace(-0.4, 0.4, 10)) {
      const CouplingSpec k(0.001, k2, 2);
      for (Branch b : {Branch::inphase, Branch::antiphase}) {
        const double r = solve_branch_r(u, b, p, k);
        const Block2 J = jacobian_block(b, u, r, p, k);
        const auto N = numeric_fast_jacobian(r, 0.0, b == Branch::inphase ? 0.0 : std::numbers::pi,
                                             u, p, k, 1e-5);
        worst = std::max({worst, std::abs(J.a11 - N[4]), std::abs(J.a12 - N[5]),
                          std::abs(J.a21 - N[7]), std::abs(J.a22 - N[8])});
      }
    }
  }
  const double dt = seconds_since(t0);
  return {worst < 1e-6 && dt < 1.0,
          fmt("max |analytic - central difference| %.2e over 10x10 (u, kappa2) and both "
              "branches [tol 1e-6]; %.3f s",
              worst, dt)};
}

// ---- 9: structural invariants

Outcome invariants() {
  const ModelParams p(0.7, 0.8, 0.05, 3.0, 1.35);
  const CouplingSpec k(0.03, 0.2, 2);
  std::mt19937_64 gen(20240611);
  std::uniform_real_distribution<double> rad(0.2, 1.6), ang(-std::numbers::pi, std::numbers::pi),
      uu(-1.0, 0.5);
  double rot = 0.0, diag = 0.0, polar = 0.0, lt = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    NetworkState s(2);
    for (std::size_t j = 0; j < 2; ++j) {
      s.set_z(j, std::polar(rad(gen), ang(gen)));
      s.set_u(j, uu(gen));
    }
    const NetworkState f = eval_field_cartesian(s, p, k);

    const std::complex<double> e = std::polar(1.0, ang(gen));
    NetworkState rs = s;
    for (std::size_t j = 0; j < 2; ++j) rs.set_z(j, e * s.z(j));
    const NetworkState rf = eval_field_cartesian(rs, p, k);
    for (std::size_t j = 0; j < 2; ++j) {
      rot = std::max({rot, std::abs(rf.z(j) - e * f.z(j)), std::abs(rf.u(j) - f.u(j))});
    }

    NetworkState d(2);
    d.set_z(0, s.z(0));
    d.set_z(1, s.z(0));
    d.set_u(0, s.u(0));
    d.set_u(1, s.u(0));
    const NetworkState df = eval_field_cartesian(d, p, k);
    diag = std::max({diag, std::abs(df.z(0) - df.z(1)), std::abs(df.u(0) - df.u(1))});

    const PolarPairState ps = to_polar_pair(s);
    const PolarPairState pf = eval_field_polar_pair(ps, p, k);
    for (std::size_t j = 0; j < 2; ++j) {
      const double r = std::abs(s.z(j));
      const std::complex<double> zdot = f.z(j);
      const double rdot = (s.x(j) * zdot.real() + s.y(j) * zdot.imag()) / r;
      const double thdot = (s.x(j) * zdot.imag() - s.y(j) * zdot.real()) / (r * r);
      const double prd = j == 0 ? pf.r1 : pf.r2;
      const double ptd = j == 0 ? pf.theta1 : pf.theta2;
      polar = std::max({polar, std::abs(prd - rdot), std::abs(ptd - thdot)});
    }

    const ReducedState red{ps.r1, ps.r2, wrap_phase(ps.theta1 - ps.theta2), ps.u1};
    const ReducedState rd = eval_reduced_field(red, p, k);
    const LTState l = r1r2_to_lt(red);
    const LTState ld = eval_lt_field(l, p, k);
    lt = std::max({lt, std::abs(ld.r_l - (rd.r1 + rd.r2) / 2.0),
                   std::abs(ld.r_t - (rd.r1 - rd.r2) / 2.0), std::abs(ld.phi - rd.phi),
                   std::abs(ld.u - rd.u)});
  }

  // Identical bursters started together stay together.
  const ModelParams pb(3.0, 0.8, 0.1, 3.0, 1.35);
  const CouplingSpec kb(0.001, 0.2, 2);
  NetworkState s0(2);
  s0.set_z(0, {0.1, 0.05});
  s0.set_z(1, {0.1, 0.05});
  s0.set_u(0, 0.0);
  s0.set_u(1, 0.0);
  IntegratorConfig ic;
  ic.t_end = 60.0;
  ic.sample_dt = 0.01;
  const auto tr = simulate_network(pb, kb, s0, ic, Scheme::adaptive);
  const auto dist = pairwise_distance(tr, 0, 1);
  const double dmax = *std::max_element(dist.begin(), dist.end());
  const std::size_t bursts = segment_bursts(tr).size();

  const bool pass = rot < 1e-12 && diag < 1e-12 && polar < 1e-12 && lt < 1e-12 && dmax < 1e-9 &&
                    bursts >= 1;
  return {pass, fmt("1000 states: rotation %.1e, diagonal %.1e, polar %.1e, (r1,r2)<->(r_l,r_t) "
                    "%.1e [tol 1e-12]; symmetric pair max d12 %.1e over %zu burst(s) [tol 1e-9]",
                    rot, diag, polar, lt, dmax, bursts)};
}

// ---- 10: asymptotic order

Outcome asymptotic_order() {
  const ModelParams p(3.0, 0.8, 0.05, 3.0, 1.35);
  double err[3];
  const double k2s[3] = {0.2, 0.1, 0.05};
  for (int i = 0; i < 3; ++i) {
    const CouplingSpec k(0.0, k2s[i], 2);
    err[i] = std::abs(asymptotic_points(p, k).r_in - exact_det_zero(p, k, Branch::inphase).r);
  }
  const double q1 = err[0] / err[1];
  const double q2 = err[1] / err[2];
  const bool pass = std::abs(q1 - 4.0) < 0.5 && std::abs(q2 - 4.0) < 0.5;
  return {pass, fmt("|r_in asymptotic - exact| = %.3e, %.3e, %.3e at kappa2 = 0.2, 0.1, 0.05; "
                    "ratios %.3f, %.3f [4 +- 0.5]",
                    err[0], err[1], err[2], q1, q2)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> all = {
      {"1", [] { return table("table1", false); }},
      {"2", [] { return table("table2", true); }},
      {"3", bistability},
      {"4", [] { return pair_transitions("fig3", SyncLabel::inphase, SyncLabel::antiphase, Branch::inphase); }},
      {"4s", [] { return pair_transitions("fig3_eta005", SyncLabel::inphase, SyncLabel::antiphase, Branch::inphase); }},
      {"5", [] { return pair_transitions("fig4", SyncLabel::antiphase, SyncLabel::inphase, Branch::antiphase); }},
      {"5s", [] { return pair_transitions("fig4_eta005", SyncLabel::antiphase, SyncLabel::inphase, Branch::antiphase); }},
      {"6", splay},
      {"7", single_burster},
      {"8", jacobian_fidelity},
      {"9", invariants},
      {"10", asymptotic_order},
  };
  std::vector<std::string> wanted(argv + 1, argv + argc);
  bool ok = true;
  for (const auto& [id, fn] : all) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), id) == wanted.end()) continue;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %-3s %s  %s\n", id.c_str(), o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    ok = ok && o.pass;
  }
  return ok ? 0 : 1;
}
