#pragma once

// Network runs: single trajectories with metadata attached, and batched
// stochastic ensembles that advance many seeds in lockstep through the
// vectorized kernels.

#include <cstdint>
#include <span>
#include <vector>

#include "bautin/integrator.hpp"
#include "bautin/kernels.hpp"
#include "bautin/model.hpp"

namespace bautin {

enum class Scheme { adaptive, euler_maruyama };

/// Integrates the coupled network and records params and coupling in the
/// trajectory metadata.
Trajectory simulate_network(const ModelParams& p, const CouplingSpec& k, const NetworkState& s0,
                            const IntegratorConfig& cfg, Scheme scheme);

/// One Euler-Maruyama trajectory per seed. Replica i is bit-identical to
/// integrate_noisy(network_system(p, k), s0, cfg) with rng_seed = seeds[i],
/// whichever kernel variant runs. Seeds are processed in blocks of
/// `block_lanes` replicas, blocks spread over `workers` threads.
std::vector<Trajectory> integrate_noisy_ensemble(const ModelParams& p, const CouplingSpec& k,
                                                 const NetworkState& s0,
                                                 const IntegratorConfig& cfg,
                                                 std::span<const std::uint64_t> seeds,
                                                 kernels::Isa isa = kernels::detect_isa(),
                                                 std::size_t workers = 1,
                                                 std::size_t block_lanes = 8);

}  // namespace bautin
