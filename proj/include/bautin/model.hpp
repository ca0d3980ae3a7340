#pragma once

// Coupled Bautin-type elliptic bursters: parameters, state containers and the
// vector fields of the full network in Cartesian and polar coordinates.
//
//   z_j' = (u_j + i omega) z_j + B z_j |z_j|^2 + C z_j |z_j|^4
//          + (kappa1 + i kappa2) sum_k c_jk z_k
//   u_j' = eta (a - |z_j|^2)
//
// with B = 2 + i zeta, C = -1 + i gamma, zeta = sigma r_m^2 / 2 and
// gamma = -sigma / 4, so that the spiking frequency Omega(r) has a turning
// point at r = r_m.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace bautin {

class ModelParams {
 public:
  /// Throws ConfigError unless every value is finite, eta >= 0 and r_m > 0.
  ModelParams(double omega, double a, double eta, double sigma, double r_m);

  double omega() const { return omega_; }
  double a() const { return a_; }
  double eta() const { return eta_; }
  double sigma() const { return sigma_; }
  double r_m() const { return r_m_; }

  double zeta() const { return sigma_ * r_m_ * r_m_ / 2.0; }
  double gamma() const { return -sigma_ / 4.0; }
  std::complex<double> B() const { return {2.0, zeta()}; }
  std::complex<double> C() const { return {-1.0, gamma()}; }

  ModelParams with_omega(double v) const { return {v, a_, eta_, sigma_, r_m_}; }
  ModelParams with_a(double v) const { return {omega_, v, eta_, sigma_, r_m_}; }
  ModelParams with_eta(double v) const { return {omega_, a_, v, sigma_, r_m_}; }
  ModelParams with_sigma(double v) const { return {omega_, a_, eta_, v, r_m_}; }
  ModelParams with_r_m(double v) const { return {omega_, a_, eta_, sigma_, v}; }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;

 private:
  double omega_;
  double a_;
  double eta_;
  double sigma_;
  double r_m_;
};

struct Coefficients {
  double zeta;
  double gamma;
  std::complex<double> B;
  std::complex<double> C;
};

Coefficients derive_coefficients(const ModelParams& p);

/// Linear coupling gain kappa1 + i kappa2 and a dense real connectivity
/// matrix with zero diagonal (row-major, n x n).
class CouplingSpec {
 public:
  /// All-to-all: c_jk = 1 for j != k.
  CouplingSpec(double kappa1, double kappa2, std::size_t n);
  CouplingSpec(double kappa1, double kappa2, std::size_t n, std::vector<double> matrix);

  double kappa1() const { return kappa1_; }
  double kappa2() const { return kappa2_; }
  std::size_t n() const { return n_; }
  double c(std::size_t j, std::size_t k) const { return c_[j * n_ + k]; }
  std::span<const double> matrix() const { return c_; }

  CouplingSpec with_kappa1(double v) const { return {v, kappa2_, n_, c_}; }
  CouplingSpec with_kappa2(double v) const { return {kappa1_, v, n_, c_}; }

  friend bool operator==(const CouplingSpec&, const CouplingSpec&) = default;

 private:
  double kappa1_;
  double kappa2_;
  std::size_t n_;
  std::vector<double> c_;
};

/// Cartesian state of n bursters, stored interleaved as (x_j, y_j, u_j).
class NetworkState {
 public:
  static constexpr std::size_t kStride = 3;

  NetworkState() = default;
  explicit NetworkState(std::size_t n) : values_(kStride * n, 0.0) {}
  /// Throws DomainError if the size is not a multiple of 3.
  explicit NetworkState(std::vector<double> values);

  std::size_t n() const { return values_.size() / kStride; }
  std::size_t dimension() const { return values_.size(); }

  double x(std::size_t j) const { return values_[kStride * j]; }
  double y(std::size_t j) const { return values_[kStride * j + 1]; }
  double u(std::size_t j) const { return values_[kStride * j + 2]; }
  std::complex<double> z(std::size_t j) const { return {x(j), y(j)}; }

  void set_z(std::size_t j, std::complex<double> z) {
    values_[kStride * j] = z.real();
    values_[kStride * j + 1] = z.imag();
  }
  void set_u(std::size_t j, double u) { values_[kStride * j + 2] = u; }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  friend bool operator==(const NetworkState&, const NetworkState&) = default;

 private:
  std::vector<double> values_;
};

/// Evaluates the full network field. Throws DomainError when the state and
/// the connectivity matrix disagree on n.
NetworkState eval_field_cartesian(const NetworkState& s, const ModelParams& p,
                                  const CouplingSpec& k);

/// Allocation-free form used by the integrators; `out` must have the size of `s`.
void eval_field_cartesian(std::span<const double> s, std::span<double> out,
                          const ModelParams& p, const CouplingSpec& k);

/// Polar coordinates of one burster.
struct BursterPolar {
  double r;
  double theta;
  double u;
};

/// Two bursters in polar form. Also used for the time derivative.
struct PolarPairState {
  double r1;
  double theta1;
  double u1;
  double r2;
  double theta2;
  double u2;
};

/// Derivatives of the n = 2 system in polar form. Throws DomainError unless
/// r1, r2 > 0 and k.n() == 2.
PolarPairState eval_field_polar_pair(const PolarPairState& s, const ModelParams& p,
                                     const CouplingSpec& k);

/// Omega(r) = omega + zeta r^2 + gamma r^4.
double omega_of_r(double r, const ModelParams& p);
/// dOmega/dr = sigma r (r_m^2 - r^2).
double domega_dr(double r, const ModelParams& p);

/// Wraps an angle into (-pi, pi].
double wrap_phase(double angle);

/// Throws DomainError (undefined phase) if some |z_j| == 0.
std::vector<BursterPolar> to_polar(const NetworkState& s);
NetworkState to_cartesian(std::span<const BursterPolar> polar);

PolarPairState to_polar_pair(const NetworkState& s);
NetworkState from_polar_pair(const PolarPairState& s);

}  // namespace bautin
