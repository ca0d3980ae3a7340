#pragma once

// Bifurcation diagrams as data: fast equilibria over a u grid linked into
// branches, and two-parameter stability boundaries of the symmetric branches.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "bautin/model.hpp"
#include "bautin/stability.hpp"

namespace bautin {

struct BranchPoint {
  FastEquilibrium eq;
  std::size_t branch_id;
};

struct BranchDiagram {
  std::vector<double> u_grid;
  std::vector<std::vector<BranchPoint>> points;  // points[i] belongs to u_grid[i]
  std::size_t branch_count = 0;
};

/// Equilibria at n_u evenly spaced values in [u_min, u_max], each linked to
/// the nearest unclaimed point (in r_l, r_t and wrapped phi) at the previous
/// grid value when closer than `link_radius`; otherwise it starts a branch.
BranchDiagram branch_diagram(double u_min, double u_max, std::size_t n_u, const ModelParams& p,
                             const CouplingSpec& k, const SeedGrid& grid = {},
                             std::size_t workers = 1, double link_radius = 0.25);

enum class Plane { sigma, r_m, kappa1, kappa2 };

std::string_view plane_name(Plane plane);
/// Accepts "sigma", "r_m", "kappa1", "kappa2". Throws ConfigError otherwise.
Plane parse_plane(std::string_view name);

/// Copies of p and k with the plane's parameter set to `lambda`.
ModelParams plane_params(Plane plane, const ModelParams& p, double lambda);
CouplingSpec plane_coupling(Plane plane, const CouplingSpec& k, double lambda);

/// Interval of u with a constant stability pattern.
///   a: antiphase stable only, b: both stable, c: inphase stable only,
///   n: neither stable.
struct Region {
  double u_lo;
  double u_hi;
  char label;
};

struct BoundaryPoint {
  double lambda;
  /// Every u in the window where the branch changes stability, descending.
  std::vector<double> inphase_crossings;
  std::vector<double> antiphase_crossings;
  /// Highest crossing of each branch, absent when the branch does not change
  /// stability in the window (a gap).
  std::optional<double> u_in;
  std::optional<double> u_anti;
  std::vector<Region> regions;  // ascending in u, covering the window
};

struct ScanWindow {
  double u_min = -0.999;
  double u_max = 0.999;
  std::size_t n_u = 200;
  double tol = 1e-8;
};

struct RegionBoundary {
  Plane plane;
  std::vector<BoundaryPoint> points;  // sorted by lambda
};

/// Per-lambda grid search plus bisection (to window.tol) on the transverse
/// stability of each symmetric branch. u values below a branch's fold are
/// skipped for that branch.
RegionBoundary boundary_scan(Plane plane, std::span<const double> lambdas, const ModelParams& p,
                             const CouplingSpec& k, const ScanWindow& window = {},
                             std::size_t workers = 1);

struct DetZeroResult {
  double u;
  double r;
  double det;
};

/// Bisects det of the branch block along r(u) to |u_hi - u_lo| < 1e-12.
/// Throws NumericError("no sign change ...") when det(u_lo) det(u_hi) >= 0.
DetZeroResult det_zero_bisect(Branch b, double u_lo, double u_hi, const ModelParams& p,
                              const CouplingSpec& k);

/// Evenly spaced values including both ends.
std::vector<double> linspace(double lo, double hi, std::size_t n);

}  // namespace bautin
