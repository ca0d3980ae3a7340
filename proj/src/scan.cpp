#include "bautin/scan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bautin/errors.hpp"
#include "bautin/parallel.hpp"

namespace bautin {

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  if (n == 1) {
    v[0] = lo;
    return v;
  }
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  if (n > 0) v.back() = hi;
  return v;
}

BranchDiagram branch_diagram(double u_min, double u_max, std::size_t n_u, const ModelParams& p,
                             const CouplingSpec& k, const SeedGrid& grid, std::size_t workers,
                             double link_radius) {
  if (n_u == 0 || !(u_max >= u_min)) throw ConfigError("invalid u range for branch diagram");
  BranchDiagram d;
  d.u_grid = linspace(u_min, u_max, n_u);
  std::vector<std::vector<FastEquilibrium>> found(n_u);
  parallel_for(n_u, workers, [&](std::size_t i) {
    found[i] = find_fast_equilibria(d.u_grid[i], p, k, grid).equilibria;
  });

  d.points.resize(n_u);
  for (std::size_t i = 0; i < n_u; ++i) {
    auto& cur = d.points[i];
    for (const auto& e : found[i]) cur.push_back({e, 0});
    std::vector<bool> assigned(cur.size(), false);
    if (i > 0) {
      const auto& prev = d.points[i - 1];
      struct Pair {
        double dist;
        std::size_t a;
        std::size_t b;
      };
      std::vector<Pair> pairs;
      for (std::size_t a = 0; a < cur.size(); ++a) {
        for (std::size_t b = 0; b < prev.size(); ++b) {
          const double d0 = cur[a].eq.r_l - prev[b].eq.r_l;
          const double d1 = cur[a].eq.r_t - prev[b].eq.r_t;
          const double d2 = wrap_phase(cur[a].eq.phi - prev[b].eq.phi);
          const double dist = std::sqrt(d0 * d0 + d1 * d1 + d2 * d2);
          if (dist < link_radius) pairs.push_back({dist, a, b});
        }
      }
      std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) {
        return x.dist != y.dist ? x.dist < y.dist : (x.a != y.a ? x.a < y.a : x.b < y.b);
      });
      std::vector<bool> taken(prev.size(), false);
      for (const auto& pr : pairs) {
        if (assigned[pr.a] || taken[pr.b]) continue;
        cur[pr.a].branch_id = prev[pr.b].branch_id;
        assigned[pr.a] = true;
        taken[pr.b] = true;
      }
    }
    for (std::size_t a = 0; a < cur.size(); ++a) {
      if (!assigned[a]) cur[a].branch_id = d.branch_count++;
    }
  }
  return d;
}

std::string_view plane_name(Plane plane) {
  switch (plane) {
    case Plane::sigma:
      return "sigma";
    case Plane::r_m:
      return "r_m";
    case Plane::kappa1:
      return "kappa1";
    case Plane::kappa2:
      return "kappa2";
  }
  return "unknown";
}

Plane parse_plane(std::string_view name) {
  if (name == "sigma") return Plane::sigma;
  if (name == "r_m") return Plane::r_m;
  if (name == "kappa1") return Plane::kappa1;
  if (name == "kappa2") return Plane::kappa2;
  throw ConfigError("unknown scan plane '" + std::string(name) +
                    "' (expected sigma, r_m, kappa1 or kappa2)");
}

ModelParams plane_params(Plane plane, const ModelParams& p, double lambda) {
  if (plane == Plane::sigma) return p.with_sigma(lambda);
  if (plane == Plane::r_m) return p.with_r_m(lambda);
  return p;
}

CouplingSpec plane_coupling(Plane plane, const CouplingSpec& k, double lambda) {
  if (plane == Plane::kappa1) return k.with_kappa1(lambda);
  if (plane == Plane::kappa2) return k.with_kappa2(lambda);
  return k;
}

namespace {

double branch_det(Branch b, double u, const ModelParams& p, const CouplingSpec& k) {
  const double r = solve_branch_r(u, b, p, k);
  return trace_det(jacobian_block(b, u, r, p, k)).det;
}

bool branch_exists(Branch b, double u, const CouplingSpec& k) {
  return 1.0 + u + 2.0 * k.kappa1() * branch_phi(b) >= 0.0;
}

bool branch_stable(Branch b, double u, const ModelParams& p, const CouplingSpec& k) {
  return branch_exists(b, u, k) && is_stable(classify_branch(b, u, p, k));
}

std::vector<double> crossings(Branch b, const std::vector<double>& grid, const ModelParams& p,
                              const CouplingSpec& k, double tol) {
  std::vector<double> out;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    double lo = grid[i - 1];
    double hi = grid[i];
    if (!branch_exists(b, lo, k) || !branch_exists(b, hi, k)) continue;
    const bool s_lo = branch_stable(b, lo, p, k);
    if (s_lo == branch_stable(b, hi, p, k)) continue;
    while (hi - lo > tol) {
      const double mid = 0.5 * (lo + hi);
      (branch_stable(b, mid, p, k) == s_lo ? lo : hi) = mid;
    }
    out.push_back(0.5 * (lo + hi));
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

char region_label(bool in, bool anti) {
  if (in && anti) return 'b';
  if (anti) return 'a';
  if (in) return 'c';
  return 'n';
}

}  // namespace

RegionBoundary boundary_scan(Plane plane, std::span<const double> lambdas, const ModelParams& p,
                             const CouplingSpec& k, const ScanWindow& window,
                             std::size_t workers) {
  if (window.n_u < 2 || !(window.u_max > window.u_min) || !(window.tol > 0.0)) {
    throw ConfigError("invalid scan window");
  }
  RegionBoundary out{plane, std::vector<BoundaryPoint>(lambdas.size())};
  const auto grid = linspace(window.u_min, window.u_max, window.n_u);
  parallel_for(lambdas.size(), workers, [&](std::size_t i) {
    const double lambda = lambdas[i];
    const ModelParams pl = plane_params(plane, p, lambda);
    const CouplingSpec kl = plane_coupling(plane, k, lambda);
    BoundaryPoint bp;
    bp.lambda = lambda;
    bp.inphase_crossings = crossings(Branch::inphase, grid, pl, kl, window.tol);
    bp.antiphase_crossings = crossings(Branch::antiphase, grid, pl, kl, window.tol);
    if (!bp.inphase_crossings.empty()) bp.u_in = bp.inphase_crossings.front();
    if (!bp.antiphase_crossings.empty()) bp.u_anti = bp.antiphase_crossings.front();

    std::vector<double> cuts = {window.u_min, window.u_max};
    cuts.insert(cuts.end(), bp.inphase_crossings.begin(), bp.inphase_crossings.end());
    cuts.insert(cuts.end(), bp.antiphase_crossings.begin(), bp.antiphase_crossings.end());
    for (Branch b : {Branch::inphase, Branch::antiphase}) {
      const double fold = -1.0 - 2.0 * kl.kappa1() * branch_phi(b);
      if (fold > window.u_min && fold < window.u_max) cuts.push_back(fold);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (std::size_t c = 1; c < cuts.size(); ++c) {
      const double mid = 0.5 * (cuts[c - 1] + cuts[c]);
      const char label = region_label(branch_stable(Branch::inphase, mid, pl, kl),
                                      branch_stable(Branch::antiphase, mid, pl, kl));
      if (!bp.regions.empty() && bp.regions.back().label == label) {
        bp.regions.back().u_hi = cuts[c];
      } else {
        bp.regions.push_back({cuts[c - 1], cuts[c], label});
      }
    }
    out.points[i] = std::move(bp);
  });
  std::stable_sort(out.points.begin(), out.points.end(),
                   [](const BoundaryPoint& a, const BoundaryPoint& b) { return a.lambda < b.lambda; });
  return out;
}

DetZeroResult det_zero_bisect(Branch b, double u_lo, double u_hi, const ModelParams& p,
                              const CouplingSpec& k) {
  if (!(u_hi > u_lo)) throw DomainError("det_zero_bisect needs u_lo < u_hi");
  if (!branch_exists(b, u_lo, k)) {
    throw NumericError("branch " + std::string(branch_name(b)) + " absent at u = " +
                       std::to_string(u_lo));
  }
  double d_lo = branch_det(b, u_lo, p, k);
  const double d_hi = branch_det(b, u_hi, p, k);
  if (!(d_lo * d_hi < 0.0)) {
    throw NumericError("no sign change of det on the " + std::string(branch_name(b)) +
                       " branch over [" + std::to_string(u_lo) + ", " + std::to_string(u_hi) +
                       "]");
  }
  double lo = u_lo;
  double hi = u_hi;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    const double d = branch_det(b, mid, p, k);
    if (d == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((d < 0.0) == (d_lo < 0.0)) {
      lo = mid;
      d_lo = d;
    } else {
      hi = mid;
    }
  }
  const double u = 0.5 * (lo + hi);
  return {u, solve_branch_r(u, b, p, k), branch_det(b, u, p, k)};
}

}  // namespace bautin
