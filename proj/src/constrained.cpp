#include "bautin/constrained.hpp"

#include <cmath>
#include <numbers>

#include "bautin/errors.hpp"

namespace bautin {

ReducedState eval_reduced_field(const ReducedState& s, const ModelParams& p, const CouplingSpec& k) {
  if (!(s.r1 > 0.0) || !(s.r2 > 0.0)) throw DomainError("reduced field needs r1, r2 > 0");
  const double k1 = k.kappa1();
  const double k2 = k.kappa2();
  const double sigma = p.sigma();
  const double rm2 = p.r_m() * p.r_m();
  const double c = std::cos(s.phi);
  const double sn = std::sin(s.phi);
  const double r1s = s.r1 * s.r1;
  const double r2s = s.r2 * s.r2;
  const double r1r2 = s.r1 * s.r2;

  ReducedState d{};
  d.r1 = s.u * s.r1 + 2.0 * r1s * s.r1 - r1s * r1s * s.r1 + k1 * s.r2 * c + k2 * s.r2 * sn;
  d.r2 = s.u * s.r2 + 2.0 * r2s * s.r2 - r2s * r2s * s.r2 + k1 * s.r1 * c - k2 * s.r1 * sn;
  d.phi = 0.5 * sigma * rm2 * (r1s - r2s) - 0.25 * sigma * (r1s * r1s - r2s * r2s) -
          k1 * ((r1s + r2s) / r1r2) * sn - k2 * ((r1s - r2s) / r1r2) * c;
  d.u = p.eta() * (p.a() - 0.5 * (r1s + r2s));
  return d;
}

std::array<double, 3> eval_lt_fast(double rl, double rt, double phi, double u,
                                   const ModelParams& p, const CouplingSpec& k) {
  if (!(rl > std::abs(rt))) throw DomainError("LT field is singular unless r_l > |r_t|");
  const double k1 = k.kappa1();
  const double k2 = k.kappa2();
  const double sigma = p.sigma();
  const double rm2 = p.r_m() * p.r_m();
  const double c = std::cos(phi);
  const double sn = std::sin(phi);
  const double l2 = rl * rl;
  const double t2 = rt * rt;
  const double denom = l2 - t2;

  const double drl = u * rl + 2.0 * l2 * rl + 6.0 * rl * t2 - l2 * l2 * rl -
                     10.0 * l2 * rl * t2 - 5.0 * rl * t2 * t2 + k1 * rl * c - k2 * rt * sn;
  const double drt = u * rt + 6.0 * l2 * rt + 2.0 * t2 * rt - 5.0 * l2 * l2 * rt -
                     10.0 * l2 * t2 * rt - t2 * t2 * rt - k1 * rt * c + k2 * rl * sn;
  const double dphi = 2.0 * sigma * rm2 * rl * rt - 2.0 * sigma * rl * rt * (l2 + t2) -
                      2.0 * k1 * ((l2 + t2) / denom) * sn - 4.0 * k2 * (rl * rt / denom) * c;
  return {drl, drt, dphi};
}

LTState eval_lt_field(const LTState& s, const ModelParams& p, const CouplingSpec& k) {
  const auto fast = eval_lt_fast(s.r_l, s.r_t, s.phi, s.u, p, k);
  return {fast[0], fast[1], fast[2], p.eta() * (p.a() - (s.r_l * s.r_l + s.r_t * s.r_t))};
}

LTState r1r2_to_lt(const ReducedState& s) {
  LTState out{(s.r1 + s.r2) / 2.0, (s.r1 - s.r2) / 2.0, wrap_phase(s.phi), s.u};
  if (!(out.r_l > std::abs(out.r_t))) {
    throw DomainError("image violates r_l > |r_t| (a radius is not positive)");
  }
  return out;
}

ReducedState lt_to_r1r2(const LTState& s) {
  if (!(s.r_l > std::abs(s.r_t))) throw DomainError("LT state needs r_l > |r_t|");
  return {s.r_l + s.r_t, s.r_l - s.r_t, wrap_phase(s.phi), s.u};
}

double eval_subspace_field(double rl, double u, double phi, const ModelParams&,
                           const CouplingSpec& k) {
  if (rl < 0.0) throw DomainError("subspace field needs r_l >= 0");
  double cos_phi = 0.0;
  if (std::abs(phi) <= 1e-12) {
    cos_phi = 1.0;
  } else if (std::abs(std::abs(phi) - std::numbers::pi) <= 1e-12) {
    cos_phi = -1.0;
  } else {
    throw DomainError("symmetric subspace requires phi = 0 or phi = pi");
  }
  const double l2 = rl * rl;
  return (u + 2.0 * k.kappa1() * cos_phi) * rl + 2.0 * l2 * rl - l2 * l2 * rl;
}

}  // namespace bautin
