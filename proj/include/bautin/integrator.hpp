#pragma once

// Time integration of arbitrary smooth vector fields.
//
// Deterministic runs use the Dormand-Prince 5(4) embedded pair with
// step-size control and its fourth-order continuous extension; output is
// interpolated onto a uniform grid. Runs with additive noise use fixed-step
// Euler-Maruyama, perturbing only the components listed as noisy.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "bautin/model.hpp"

namespace bautin {

struct IntegratorConfig {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  double dt = 1e-3;  // fixed step for the stochastic scheme
  double t0 = 0.0;
  double t_end = 0.0;
  double sample_dt = 0.01;
  double noise_amplitude = 0.0;  // epsilon: increments epsilon * sqrt(dt) * N(0, 1)
  std::uint64_t rng_seed = 0;
  std::size_t max_steps = 500'000'000;

  /// Throws ConfigError. Adaptive mode checks tolerances; fixed-step mode
  /// checks dt and that sample_dt is a whole multiple of dt.
  void validate_adaptive() const;
  void validate_fixed_step() const;
  /// round(sample_dt / dt), after validate_fixed_step().
  std::size_t sample_stride() const;
};

struct OdeSystem {
  using Rhs = std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

  std::size_t dimension = 0;
  Rhs rhs;
  /// Components that receive additive noise in integrate_noisy.
  std::vector<std::size_t> noisy_components;
};

/// Full coupled network; noise acts on every (x_j, y_j).
OdeSystem network_system(const ModelParams& p, const CouplingSpec& k);

struct TrajectoryMetadata {
  std::optional<ModelParams> params;
  std::optional<CouplingSpec> coupling;
  IntegratorConfig config;
  std::uint64_t seed = 0;
  bool stochastic = false;
};

/// Uniformly sampled solution. times[i] = t0 + i * sample_dt.
struct Trajectory {
  std::size_t dimension = 0;
  double t0 = 0.0;
  double sample_dt = 0.0;
  std::vector<double> times;
  std::vector<double> values;  // row-major, one row of `dimension` per sample
  TrajectoryMetadata metadata;

  std::size_t size() const { return times.size(); }
  std::span<const double> state(std::size_t i) const {
    return {values.data() + i * dimension, dimension};
  }
  double at(std::size_t i, std::size_t component) const {
    return values[i * dimension + component];
  }
};

/// One accepted Dormand-Prince step with its continuous extension.
struct DenseSegment {
  double t0;
  double t1;
  double h;  // t1 - t0
  std::vector<double> y0;
  std::vector<double> y1;
  // Hairer's rcont2..rcont5: y(t0 + s h) = y0 + s (c2 + (1 - s)(c3 + s (c4 + (1 - s) c5)))
  std::vector<double> c2, c3, c4, c5;

  void evaluate(double t, std::span<double> out) const;
};

class DenseSolution {
 public:
  std::size_t dimension() const { return dimension_; }
  double t_begin() const { return segments_.empty() ? 0.0 : segments_.front().t0; }
  double t_end() const;
  const std::vector<DenseSegment>& segments() const { return segments_; }

  /// Throws DomainError outside [t_begin, t_end].
  std::vector<double> evaluate(double t) const;

  void set_dimension(std::size_t d) { dimension_ = d; }
  void append(DenseSegment segment);

 private:
  std::size_t dimension_ = 0;
  std::vector<DenseSegment> segments_;
};

/// Adaptive integration keeping every step. Throws NumericError on step-size
/// underflow, on exceeding max_steps, or on a non-finite state.
DenseSolution integrate_dense(const OdeSystem& sys, std::span<const double> y0,
                              const IntegratorConfig& cfg);

/// Uniform samples t_begin + i * sample_dt up to t_end. Sample times falling
/// exactly on a step boundary return the stored step endpoint. Throws
/// DomainError when the requested grid overruns the solution.
Trajectory resample(const DenseSolution& solution, double sample_dt);
Trajectory resample(const DenseSolution& solution, double sample_dt, double t_first,
                    double t_last);

/// Adaptive run resampled on the fly (no step history is kept). Requires
/// noise_amplitude == 0.
Trajectory integrate_deterministic(const OdeSystem& sys, std::span<const double> y0,
                                   const IntegratorConfig& cfg);

/// Euler-Maruyama: y += dt f(y), then each noisy component receives
/// epsilon sqrt(dt) xi, with xi drawn in component order from
/// NormalStream(rng_seed). epsilon == 0 reduces to plain forward Euler.
Trajectory integrate_noisy(const OdeSystem& sys, std::span<const double> y0,
                           const IntegratorConfig& cfg);

}  // namespace bautin
