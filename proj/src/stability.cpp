#include "bautin/stability.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "bautin/constrained.hpp"
#include "bautin/errors.hpp"

namespace bautin {

std::string_view branch_name(Branch b) { return b == Branch::inphase ? "inphase" : "antiphase"; }

double branch_phi(Branch b) { return b == Branch::inphase ? 1.0 : -1.0; }

std::string_view classification_name(Classification c) {
  switch (c) {
    case Classification::stable_node:
      return "stable-node";
    case Classification::stable_focus:
      return "stable-focus";
    case Classification::saddle:
      return "saddle";
    case Classification::unstable_node:
      return "unstable-node";
    case Classification::unstable_focus:
      return "unstable-focus";
    case Classification::nonhyperbolic:
      return "nonhyperbolic";
  }
  return "unknown";
}

bool is_stable(Classification c) {
  return c == Classification::stable_node || c == Classification::stable_focus;
}

std::string_view tag_name(EquilibriumTag t) {
  switch (t) {
    case EquilibriumTag::inphase:
      return "inphase";
    case EquilibriumTag::antiphase:
      return "antiphase";
    case EquilibriumTag::general:
      return "general";
  }
  return "unknown";
}

double solve_branch_r(double u, Branch b, const ModelParams&, const CouplingSpec& k) {
  const double shift = 2.0 * k.kappa1() * branch_phi(b);
  const double disc = 1.0 + u + shift;
  if (!(disc >= 0.0)) {
    throw NumericError("no spiking branch at u = " + std::to_string(u) + " (below the fold)");
  }
  double r = std::sqrt(1.0 + std::sqrt(disc));
  for (int it = 0; it < 4; ++it) {
    const double r2 = r * r;
    const double g = r2 * r2 - 2.0 * r2 - shift - u;
    const double dg = 4.0 * r * (r2 - 1.0);
    if (std::abs(g) < 1e-15 || std::abs(dg) < 1e-8) break;
    r -= g / dg;
  }
  return r;
}

namespace {

Block2 block(double sign, double u, double r, const ModelParams& p, const CouplingSpec& k) {
  if (!(r > 0.0)) throw DomainError("branch radius must be > 0");
  const double k1 = sign * k.kappa1();
  const double k2 = sign * k.kappa2();
  const double s = p.sigma();
  const double rm2 = p.r_m() * p.r_m();
  const double r2 = r * r;
  return {u + 6.0 * r2 - 5.0 * r2 * r2 - k1, k2 * r,
          2.0 * s * rm2 * r - 2.0 * s * r2 * r - 4.0 * k2 / r, -2.0 * k1};
}

}  // namespace

Block2 jacobian_inphase(double u, double r, const ModelParams& p, const CouplingSpec& k) {
  return block(1.0, u, r, p, k);
}

Block2 jacobian_antiphase(double u, double r, const ModelParams& p, const CouplingSpec& k) {
  return block(-1.0, u, r, p, k);
}

Block2 jacobian_block(Branch b, double u, double r, const ModelParams& p, const CouplingSpec& k) {
  return block(branch_phi(b), u, r, p, k);
}

TraceDet trace_det(const Block2& m) { return {m.a11 + m.a22, m.a11 * m.a22 - m.a12 * m.a21}; }

Classification classify(double trace, double det) {
  constexpr double tol = 1e-12;
  if (std::abs(det) <= tol) return Classification::nonhyperbolic;
  if (det < 0.0) return Classification::saddle;
  if (std::abs(trace) <= tol) return Classification::nonhyperbolic;
  const bool node = trace * trace >= 4.0 * det;
  if (trace < 0.0) return node ? Classification::stable_node : Classification::stable_focus;
  return node ? Classification::unstable_node : Classification::unstable_focus;
}

Classification classify_branch(Branch b, double u, const ModelParams& p, const CouplingSpec& k) {
  const double r = solve_branch_r(u, b, p, k);
  return classify(trace_det(jacobian_block(b, u, r, p, k)));
}

AsymptoticPoints asymptotic_points(const ModelParams& p, const CouplingSpec& k) {
  if (k.kappa1() != 0.0) throw ConfigError("asymptotic points require kappa1 = 0");
  if (!(p.sigma() > 0.0)) throw ConfigError("asymptotic points require sigma > 0");
  const double rm = p.r_m();
  const double rm2 = rm * rm;
  const double k2 = k.kappa2();
  const double s = p.sigma();
  const double dr = k2 / (s * rm2 * rm2);
  const double base = rm2 * (rm2 - 2.0);
  const double du = (4.0 * k2 / (s * rm2)) * (1.0 - rm2);
  return {rm * (1.0 - dr), rm * (1.0 + dr), base + du, base - du};
}

DetZero exact_det_zero(const ModelParams& p, const CouplingSpec& k, Branch b) {
  if (k.kappa1() != 0.0) throw ConfigError("exact det zero requires kappa1 = 0");
  if (p.sigma() == 0.0) throw ConfigError("exact det zero requires sigma != 0");
  const double rm2 = p.r_m() * p.r_m();
  // sigma x^2 - sigma rm^2 x + 2 kappa2 branch_phi = 0, x = r^2
  const double c = 2.0 * k.kappa2() * branch_phi(b) / p.sigma();
  const double disc = rm2 * rm2 - 4.0 * c;
  if (disc < 0.0) throw NumericError("det has no real zero on the branch");
  const double sq = std::sqrt(disc);
  const double x1 = 0.5 * (rm2 + sq);
  const double x2 = 0.5 * (rm2 - sq);
  const double x = std::abs(x1 - rm2) <= std::abs(x2 - rm2) ? x1 : x2;
  if (!(x > 0.0)) throw NumericError("det zero at nonpositive radius");
  return {std::sqrt(x), x * x - 2.0 * x};
}

std::array<double, 9> numeric_fast_jacobian(double r_l, double r_t, double phi, double u,
                                            const ModelParams& p, const CouplingSpec& k,
                                            double step) {
  std::array<double, 9> j{};
  const std::array<double, 3> x0 = {r_l, r_t, phi};
  for (int c = 0; c < 3; ++c) {
    auto xp = x0;
    auto xm = x0;
    xp[c] += step;
    xm[c] -= step;
    const auto fp = eval_lt_fast(xp[0], xp[1], xp[2], u, p, k);
    const auto fm = eval_lt_fast(xm[0], xm[1], xm[2], u, p, k);
    for (int r = 0; r < 3; ++r) j[3 * r + c] = (fp[r] - fm[r]) / (2.0 * step);
  }
  return j;
}

Classification classify_eigenvalues(const std::array<std::complex<double>, 3>& ev, double tol) {
  int neg = 0;
  int pos = 0;
  bool complex_pair = false;
  for (const auto& l : ev) {
    if (std::abs(l.real()) <= tol) return Classification::nonhyperbolic;
    (l.real() < 0.0 ? neg : pos)++;
    if (std::abs(l.imag()) > tol) complex_pair = true;
  }
  if (neg == 3) return complex_pair ? Classification::stable_focus : Classification::stable_node;
  if (pos == 3) return complex_pair ? Classification::unstable_focus : Classification::unstable_node;
  return Classification::saddle;
}

namespace {

constexpr double kNewtonTol = 1e-12;
constexpr int kNewtonMaxIter = 50;
constexpr double kMinRadius = 1e-3;

double max_abs(const std::array<double, 3>& v) {
  return std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])});
}

bool in_chart(const std::array<double, 3>& x) {
  return x[0] >= 0.05 && x[0] <= 3.0 && x[0] - std::abs(x[1]) > kMinRadius;
}

// Returns false for seeds that leave the chart or fail to converge.
bool newton(std::array<double, 3>& x, double u, const ModelParams& p, const CouplingSpec& k) {
  auto f = eval_lt_fast(x[0], x[1], x[2], u, p, k);
  for (int it = 0; it < kNewtonMaxIter; ++it) {
    if (max_abs(f) < kNewtonTol) return true;
    const auto jf = numeric_fast_jacobian(x[0], x[1], x[2], u, p, k, 1e-7);
    const Eigen::Matrix3d jm = Eigen::Map<const Eigen::Matrix<double, 3, 3, Eigen::RowMajor>>(jf.data());
    const Eigen::Vector3d rhs(f[0], f[1], f[2]);
    const Eigen::Vector3d dx = jm.fullPivLu().solve(rhs);
    if (!dx.allFinite()) return false;
    // Damped step: halve until the residual decreases inside the chart.
    double lambda = 1.0;
    bool accepted = false;
    for (int h = 0; h < 20; ++h) {
      std::array<double, 3> xn = {x[0] - lambda * dx[0], x[1] - lambda * dx[1],
                                  x[2] - lambda * dx[2]};
      if (in_chart(xn)) {
        const auto fn = eval_lt_fast(xn[0], xn[1], xn[2], u, p, k);
        if (max_abs(fn) < max_abs(f) || (lambda == 1.0 && max_abs(fn) < 10.0 * max_abs(f))) {
          x = xn;
          f = fn;
          accepted = true;
          break;
        }
      }
      lambda *= 0.5;
    }
    if (!accepted) return false;
  }
  return max_abs(f) < kNewtonTol;
}

double phase_gap(double a, double b) { return std::abs(wrap_phase(a - b)); }

}  // namespace

EquilibriumSearch find_fast_equilibria(double u, const ModelParams& p, const CouplingSpec& k,
                                       const SeedGrid& grid) {
  std::vector<std::array<double, 3>> seeds;
  for (Branch b : {Branch::inphase, Branch::antiphase}) {
    const double phi = b == Branch::inphase ? 0.0 : std::numbers::pi;
    const double disc = 1.0 + u + 2.0 * k.kappa1() * branch_phi(b);
    if (disc >= 0.0) {
      seeds.push_back({solve_branch_r(u, b, p, k), 0.0, phi});
      const double lower = 1.0 - std::sqrt(disc);
      if (lower > 0.0) seeds.push_back({std::sqrt(lower), 0.0, phi});
    }
  }
  for (std::size_t i = 0; i < grid.n_rl; ++i) {
    const double rl = grid.n_rl == 1 ? grid.rl_min
                                     : grid.rl_min + (grid.rl_max - grid.rl_min) *
                                                         static_cast<double>(i) /
                                                         static_cast<double>(grid.n_rl - 1);
    for (std::size_t j = 0; j < grid.n_rt; ++j) {
      const double rt = grid.n_rt == 1 ? 0.0
                                       : -grid.rt_max + 2.0 * grid.rt_max * static_cast<double>(j) /
                                                            static_cast<double>(grid.n_rt - 1);
      for (std::size_t m = 0; m < grid.n_phi; ++m) {
        const double phi = -std::numbers::pi + 2.0 * std::numbers::pi * static_cast<double>(m) /
                                                   static_cast<double>(grid.n_phi);
        seeds.push_back({rl, rt, phi});
      }
    }
  }

  EquilibriumSearch out;
  out.seeds = seeds.size();
  for (auto x : seeds) {
    if (!in_chart(x) || !newton(x, u, p, k)) {
      ++out.dropped;
      continue;
    }
    x[2] = wrap_phase(x[2]);
    const bool duplicate = std::any_of(out.equilibria.begin(), out.equilibria.end(), [&](const auto& e) {
      const double d0 = e.r_l - x[0];
      const double d1 = e.r_t - x[1];
      const double d2 = phase_gap(e.phi, x[2]);
      return std::sqrt(d0 * d0 + d1 * d1 + d2 * d2) < 1e-6;
    });
    if (duplicate) continue;

    FastEquilibrium e{};
    e.u = u;
    e.r_l = x[0];
    e.r_t = x[1];
    e.phi = x[2];
    if (std::abs(x[1]) < 1e-8 && std::abs(x[2]) < 1e-8) {
      e.tag = EquilibriumTag::inphase;
    } else if (std::abs(x[1]) < 1e-8 && phase_gap(x[2], std::numbers::pi) < 1e-8) {
      e.tag = EquilibriumTag::antiphase;
    } else {
      e.tag = EquilibriumTag::general;
    }
    e.residual = max_abs(eval_lt_fast(x[0], x[1], x[2], u, p, k));
    e.jacobian = numeric_fast_jacobian(x[0], x[1], x[2], u, p, k);
    const Eigen::Matrix3d jm =
        Eigen::Map<const Eigen::Matrix<double, 3, 3, Eigen::RowMajor>>(e.jacobian.data());
    Eigen::EigenSolver<Eigen::Matrix3d> es(jm, false);
    for (int i = 0; i < 3; ++i) e.eigenvalues[i] = es.eigenvalues()[i];
    std::sort(e.eigenvalues.begin(), e.eigenvalues.end(), [](auto a, auto b) {
      return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    e.classification = classify_eigenvalues(e.eigenvalues);
    out.equilibria.push_back(e);
  }
  std::sort(out.equilibria.begin(), out.equilibria.end(), [](const auto& a, const auto& b) {
    if (a.phi != b.phi) return a.phi < b.phi;
    if (a.r_l != b.r_l) return a.r_l < b.r_l;
    return a.r_t < b.r_t;
  });
  return out;
}

}  // namespace bautin
