#include "bautin/ensemble.hpp"

#include <cmath>
#include <string>

#include "bautin/errors.hpp"
#include "bautin/parallel.hpp"
#include "bautin/rng.hpp"

namespace bautin {

Trajectory simulate_network(const ModelParams& p, const CouplingSpec& k, const NetworkState& s0,
                            const IntegratorConfig& cfg, Scheme scheme) {
  if (s0.n() != k.n()) {
    throw DomainError("initial state has " + std::to_string(s0.n()) + " bursters, coupling has " +
                      std::to_string(k.n()));
  }
  const OdeSystem sys = network_system(p, k);
  Trajectory tr = scheme == Scheme::adaptive ? integrate_deterministic(sys, s0.values(), cfg)
                                             : integrate_noisy(sys, s0.values(), cfg);
  tr.metadata.params = p;
  tr.metadata.coupling = k;
  return tr;
}

namespace {

kernels::NetworkCoefficients coefficients(const ModelParams& p, const CouplingSpec& k) {
  return {k.n(),       p.omega(),  p.a(),      p.eta(),      2.0,
          p.zeta(),    -1.0,       p.gamma(),  k.kappa1(),   k.kappa2(),
          k.matrix().data()};
}

// Advances one block of replicas. Padding lanes carry the initial state
// without noise and are discarded.
void run_block(const kernels::NetworkCoefficients& coeffs, kernels::EulerStepFn step,
               std::size_t lanes, const NetworkState& s0, const IntegratorConfig& cfg,
               std::span<const std::uint64_t> seeds, std::span<Trajectory> out) {
  const std::size_t n = coeffs.n;
  const std::size_t dim = 3 * n;
  const std::size_t used = seeds.size();
  const std::size_t stride = cfg.sample_stride();
  const auto n_steps =
      static_cast<std::size_t>(std::floor((cfg.t_end - cfg.t0) / cfg.dt + 1e-9));
  const std::size_t n_samples = n_steps / stride + 1;
  const double scale = cfg.noise_amplitude * std::sqrt(cfg.dt);

  std::vector<double> state(dim * lanes), scratch(dim * lanes), noise(dim * lanes, 0.0);
  for (std::size_t c = 0; c < dim; ++c) {
    for (std::size_t l = 0; l < lanes; ++l) state[c * lanes + l] = s0.values()[c];
  }
  std::vector<NormalStream> rngs;
  rngs.reserve(used);
  for (std::uint64_t s : seeds) rngs.emplace_back(s);

  for (std::size_t l = 0; l < used; ++l) {
    Trajectory& tr = out[l];
    tr.dimension = dim;
    tr.t0 = cfg.t0;
    tr.sample_dt = static_cast<double>(stride) * cfg.dt;
    tr.metadata.config = cfg;
    tr.metadata.config.rng_seed = seeds[l];
    tr.metadata.seed = seeds[l];
    tr.metadata.stochastic = cfg.noise_amplitude != 0.0;
    tr.times.reserve(n_samples);
    tr.values.reserve(n_samples * dim);
  }
  auto record = [&](std::size_t step_index) {
    const double t = cfg.t0 + static_cast<double>(step_index) * cfg.dt;
    for (std::size_t l = 0; l < used; ++l) {
      Trajectory& tr = out[l];
      tr.times.push_back(t);
      for (std::size_t c = 0; c < dim; ++c) {
        const double v = state[c * lanes + l];
        if (!std::isfinite(v)) {
          throw NumericError("non-finite state at t = " + std::to_string(t) + " (seed " +
                             std::to_string(seeds[l]) + ")");
        }
        tr.values.push_back(v);
      }
    }
  };

  record(0);
  for (std::size_t s = 0; s < n_steps; ++s) {
    if (scale != 0.0) {
      for (std::size_t l = 0; l < used; ++l) {
        for (std::size_t j = 0; j < n; ++j) {
          noise[(3 * j) * lanes + l] = rngs[l].next();
          noise[(3 * j + 1) * lanes + l] = rngs[l].next();
        }
      }
    }
    step(coeffs, state.data(), noise.data(), scale, cfg.dt, lanes, scratch.data());
    if ((s + 1) % stride == 0) record(s + 1);
  }
}

}  // namespace

std::vector<Trajectory> integrate_noisy_ensemble(const ModelParams& p, const CouplingSpec& k,
                                                 const NetworkState& s0,
                                                 const IntegratorConfig& cfg,
                                                 std::span<const std::uint64_t> seeds,
                                                 kernels::Isa isa, std::size_t workers,
                                                 std::size_t block_lanes) {
  cfg.validate_fixed_step();
  if (s0.n() != k.n()) throw DomainError("initial state and coupling disagree on n");
  if (block_lanes == 0) throw ConfigError("block_lanes must be > 0");
  const kernels::EulerStepFn step = kernels::select_euler_step(isa);
  const std::size_t width = kernels::lane_width(isa);
  const std::size_t lanes = (block_lanes + width - 1) / width * width;
  const auto coeffs = coefficients(p, k);

  std::vector<Trajectory> out(seeds.size());
  const std::size_t blocks = (seeds.size() + lanes - 1) / lanes;
  parallel_for(blocks, workers, [&](std::size_t b) {
    const std::size_t first = b * lanes;
    const std::size_t count = std::min(lanes, seeds.size() - first);
    run_block(coeffs, step, lanes, s0, cfg, seeds.subspan(first, count),
              std::span<Trajectory>(out).subspan(first, count));
  });
  for (auto& tr : out) {
    tr.metadata.params = p;
    tr.metadata.coupling = k;
  }
  return out;
}

}  // namespace bautin
