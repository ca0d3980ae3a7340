#include "bautin/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "bautin/errors.hpp"
#include "bautin/kernels.hpp"

namespace bautin {

ModelParams::ModelParams(double omega, double a, double eta, double sigma, double r_m)
    : omega_(omega), a_(a), eta_(eta), sigma_(sigma), r_m_(r_m) {
  for (double v : {omega, a, eta, sigma, r_m}) {
    if (!std::isfinite(v)) throw ConfigError("model parameters must be finite");
  }
  if (eta < 0.0) throw ConfigError("model.eta must be >= 0");
  if (r_m <= 0.0) throw ConfigError("model.r_m must be > 0");
}

Coefficients derive_coefficients(const ModelParams& p) {
  return {p.zeta(), p.gamma(), p.B(), p.C()};
}

CouplingSpec::CouplingSpec(double kappa1, double kappa2, std::size_t n)
    : kappa1_(kappa1), kappa2_(kappa2), n_(n), c_(n * n, 1.0) {
  if (n == 0) throw ConfigError("coupling needs at least one burster");
  for (std::size_t j = 0; j < n; ++j) c_[j * n + j] = 0.0;
}

CouplingSpec::CouplingSpec(double kappa1, double kappa2, std::size_t n, std::vector<double> matrix)
    : kappa1_(kappa1), kappa2_(kappa2), n_(n), c_(std::move(matrix)) {
  if (n == 0) throw ConfigError("coupling needs at least one burster");
  if (c_.size() != n * n) {
    throw ConfigError("connectivity matrix must have n*n = " + std::to_string(n * n) +
                      " entries, got " + std::to_string(c_.size()));
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (c_[j * n + j] != 0.0) throw ConfigError("connectivity matrix needs a zero diagonal");
  }
  for (double v : c_) {
    if (!std::isfinite(v)) throw ConfigError("connectivity entries must be finite");
  }
  if (!std::isfinite(kappa1) || !std::isfinite(kappa2)) {
    throw ConfigError("coupling gains must be finite");
  }
}

NetworkState::NetworkState(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() % kStride != 0) {
    throw DomainError("network state size must be a multiple of 3");
  }
}

namespace {

kernels::NetworkCoefficients network_coefficients(const ModelParams& p, const CouplingSpec& k) {
  return {k.n(),       p.omega(),     p.a(),       p.eta(),      2.0,
          p.zeta(),    -1.0,          p.gamma(),   k.kappa1(),   k.kappa2(),
          k.matrix().data()};
}

}  // namespace

void eval_field_cartesian(std::span<const double> s, std::span<double> out, const ModelParams& p,
                          const CouplingSpec& k) {
  if (s.size() != NetworkState::kStride * k.n() || out.size() != s.size()) {
    throw DomainError("state dimension " + std::to_string(s.size()) +
                      " does not match coupling for n = " + std::to_string(k.n()));
  }
  // lanes == 1: the SoA kernel layout coincides with the interleaved state.
  kernels::field_scalar(network_coefficients(p, k), s.data(), out.data(), 1);
}

NetworkState eval_field_cartesian(const NetworkState& s, const ModelParams& p,
                                  const CouplingSpec& k) {
  NetworkState out(s.n());
  eval_field_cartesian(s.values(), out.values(), p, k);
  return out;
}

PolarPairState eval_field_polar_pair(const PolarPairState& s, const ModelParams& p,
                                     const CouplingSpec& k) {
  if (k.n() != 2) throw DomainError("polar pair field needs n = 2 coupling");
  if (!(s.r1 > 0.0) || !(s.r2 > 0.0)) throw DomainError("polar pair field needs r1, r2 > 0");

  const double k1 = k.kappa1();
  const double k2 = k.kappa2();
  const double d21 = s.theta2 - s.theta1;
  const double d12 = -d21;
  const double c12 = k.c(0, 1);
  const double c21 = k.c(1, 0);

  PolarPairState d{};
  d.r1 = s.u1 * s.r1 + 2.0 * std::pow(s.r1, 3) - std::pow(s.r1, 5) +
         c12 * s.r2 * (k1 * std::cos(d21) - k2 * std::sin(d21));
  d.theta1 = omega_of_r(s.r1, p) + c12 * (s.r2 / s.r1) * (k1 * std::sin(d21) + k2 * std::cos(d21));
  d.u1 = p.eta() * (p.a() - s.r1 * s.r1);
  d.r2 = s.u2 * s.r2 + 2.0 * std::pow(s.r2, 3) - std::pow(s.r2, 5) +
         c21 * s.r1 * (k1 * std::cos(d12) - k2 * std::sin(d12));
  d.theta2 = omega_of_r(s.r2, p) + c21 * (s.r1 / s.r2) * (k1 * std::sin(d12) + k2 * std::cos(d12));
  d.u2 = p.eta() * (p.a() - s.r2 * s.r2);
  return d;
}

double omega_of_r(double r, const ModelParams& p) {
  const double r2 = r * r;
  return p.omega() + p.zeta() * r2 + p.gamma() * r2 * r2;
}

double domega_dr(double r, const ModelParams& p) {
  const double rm2 = p.r_m() * p.r_m();
  return p.sigma() * r * (rm2 - r * r);
}

double wrap_phase(double angle) {
  double w = std::remainder(angle, 2.0 * std::numbers::pi);
  if (w <= -std::numbers::pi) w += 2.0 * std::numbers::pi;
  return w;
}

std::vector<BursterPolar> to_polar(const NetworkState& s) {
  std::vector<BursterPolar> out;
  out.reserve(s.n());
  for (std::size_t j = 0; j < s.n(); ++j) {
    const std::complex<double> z = s.z(j);
    const double r = std::abs(z);
    if (r == 0.0) {
      throw DomainError("undefined phase: burster " + std::to_string(j) + " sits at z = 0");
    }
    out.push_back({r, wrap_phase(std::arg(z)), s.u(j)});
  }
  return out;
}

NetworkState to_cartesian(std::span<const BursterPolar> polar) {
  NetworkState s(polar.size());
  for (std::size_t j = 0; j < polar.size(); ++j) {
    s.set_z(j, std::polar(polar[j].r, polar[j].theta));
    s.set_u(j, polar[j].u);
  }
  return s;
}

PolarPairState to_polar_pair(const NetworkState& s) {
  if (s.n() != 2) throw DomainError("polar pair needs n = 2");
  const auto p = to_polar(s);
  return {p[0].r, p[0].theta, p[0].u, p[1].r, p[1].theta, p[1].u};
}

NetworkState from_polar_pair(const PolarPairState& s) {
  const BursterPolar p[2] = {{s.r1, s.theta1, s.u1}, {s.r2, s.theta2, s.u2}};
  return to_cartesian(p);
}

}  // namespace bautin
