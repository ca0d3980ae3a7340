#pragma once

// Fast-subsystem stability for the burst-synchronised pair (u frozen).
//
// On the symmetric subspaces r_t = 0 with phi = 0 (inphase) or phi = pi
// (antiphase) the transverse linearisation in (r_t, phi) is a 2x2 block:
//
//   J_in   = [ u + 6r^2 - 5r^4 - k1          k2 r ]
//            [ 2 s rm^2 r - 2 s r^3 - 4 k2/r  -2 k1 ]
//   J_anti = [ u + 6r^2 - 5r^4 + k1         -k2 r ]
//            [ 2 s rm^2 r - 2 s r^3 + 4 k2/r   2 k1 ]
//
// evaluated on the spiking branch r(u). General equilibria off the subspaces
// are found by Newton iteration on the three-dimensional fast field.

#include <array>
#include <complex>
#include <cstddef>
#include <string_view>
#include <vector>

#include "bautin/model.hpp"

namespace bautin {

enum class Branch { inphase, antiphase };

std::string_view branch_name(Branch b);
/// cos(phi) of the branch: +1 inphase, -1 antiphase.
double branch_phi(Branch b);

enum class Classification {
  stable_node,
  stable_focus,
  saddle,
  unstable_node,
  unstable_focus,
  nonhyperbolic,
};

std::string_view classification_name(Classification c);
bool is_stable(Classification c);

/// Row-major 2x2 matrix.
struct Block2 {
  double a11, a12, a21, a22;
};

struct TraceDet {
  double trace;
  double det;
};

/// Upper root of u = r^4 - 2 r^2 - 2 kappa1 cos(phi), i.e.
/// r^2 = 1 + sqrt(1 + u + 2 kappa1 cos(phi)), Newton-polished.
/// Throws NumericError below the fold (no real root).
double solve_branch_r(double u, Branch b, const ModelParams& p, const CouplingSpec& k);

Block2 jacobian_inphase(double u, double r, const ModelParams& p, const CouplingSpec& k);
Block2 jacobian_antiphase(double u, double r, const ModelParams& p, const CouplingSpec& k);
Block2 jacobian_block(Branch b, double u, double r, const ModelParams& p, const CouplingSpec& k);

TraceDet trace_det(const Block2& m);

/// det < 0: saddle; det > 0: node when tr^2 >= 4 det, focus otherwise,
/// stable for tr < 0. det or tr within 1e-12 of zero: nonhyperbolic.
Classification classify(double trace, double det);
inline Classification classify(const TraceDet& td) { return classify(td.trace, td.det); }

/// Transverse classification of a symmetric branch at frozen u.
Classification classify_branch(Branch b, double u, const ModelParams& p, const CouplingSpec& k);

/// First-order (in kappa2) estimates of where det of each block vanishes,
/// for kappa1 = 0.
struct AsymptoticPoints {
  double r_in;
  double r_anti;
  double u_in;
  double u_anti;
};

/// Throws ConfigError unless kappa1 == 0 and sigma > 0.
AsymptoticPoints asymptotic_points(const ModelParams& p, const CouplingSpec& k);

struct DetZero {
  double r;
  double u;
};

/// Exact root of det = 0 for kappa1 = 0: sigma r^2 (rm^2 - r^2) = +-2 kappa2
/// solved in r^2, root nearest r_m, u = r^4 - 2 r^2. Throws ConfigError for
/// kappa1 != 0 or sigma == 0, NumericError when no real root exists.
DetZero exact_det_zero(const ModelParams& p, const CouplingSpec& k, Branch b);

enum class EquilibriumTag { inphase, antiphase, general };
std::string_view tag_name(EquilibriumTag t);

struct FastEquilibrium {
  double u;
  double r_l;
  double r_t;
  double phi;
  EquilibriumTag tag;
  std::array<double, 9> jacobian;  // row-major, order (r_l, r_t, phi)
  std::array<std::complex<double>, 3> eigenvalues;
  Classification classification;
  double residual;  // max-norm of the fast field
};

struct SeedGrid {
  std::size_t n_rl = 20;
  std::size_t n_rt = 11;
  std::size_t n_phi = 24;
  double rl_min = 0.2;
  double rl_max = 1.6;
  double rt_max = 0.5;  // r_t seeds span [-rt_max, rt_max]
};

struct EquilibriumSearch {
  std::vector<FastEquilibrium> equilibria;  // sorted by (phi, r_l, r_t)
  std::size_t seeds = 0;
  std::size_t dropped = 0;  // seeds that failed to converge or left the chart
};

/// Newton (finite-difference Jacobian, tolerance 1e-12, at most 50
/// iterations) on the fast (r_l, r_t, phi) field from every grid seed and
/// from the analytic symmetric branches; converged points closer than 1e-6
/// are merged.
EquilibriumSearch find_fast_equilibria(double u, const ModelParams& p, const CouplingSpec& k,
                                       const SeedGrid& grid = {});

/// Central-difference Jacobian of the fast field at (r_l, r_t, phi).
std::array<double, 9> numeric_fast_jacobian(double r_l, double r_t, double phi, double u,
                                            const ModelParams& p, const CouplingSpec& k,
                                            double step = 1e-6);

/// Classification from eigenvalues; real parts within `tol` of zero count as
/// nonhyperbolic.
Classification classify_eigenvalues(const std::array<std::complex<double>, 3>& ev,
                                    double tol = 1e-7);

}  // namespace bautin
