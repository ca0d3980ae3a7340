#pragma once

// Post-processing of network trajectories: pairwise distances, burst
// segmentation, phase differences, windowed synchrony labels and the
// transitions between them.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "bautin/integrator.hpp"

namespace bautin {

/// d_ij = sqrt((x_i - x_j)^2 + (y_i - y_j)^2 + (u_i - u_j)^2) per sample.
std::vector<double> pairwise_distance(const Trajectory& traj, std::size_t i, std::size_t j);

/// Mean of |z_j| over bursters, per sample.
std::vector<double> mean_radius(const Trajectory& traj);

struct BurstSegment {
  std::size_t start;  // first sample at or above r_hi
  std::size_t end;    // first sample below r_lo (exclusive end)
  std::vector<double> mean_radius;
  double u_start;  // mean over bursters
  double u_end;
};

/// Hysteresis on the mean radius: a burst opens when it reaches r_hi after
/// having been below r_lo, and closes when it drops below r_lo. Bursts cut
/// by either end of the record are dropped.
std::vector<BurstSegment> segment_bursts(const Trajectory& traj, double r_hi = 0.8,
                                         double r_lo = 0.3);

/// wrap(arg z_i - arg z_j); nullopt where either radius is below `floor`.
std::vector<std::optional<double>> phase_difference_series(const Trajectory& traj, std::size_t i,
                                                           std::size_t j, double floor = 0.1);

enum class SyncLabel { inphase, antiphase, splay, mixed, undefined };

std::string_view label_name(SyncLabel l);

/// Two bursters: median |phi| < pi/4 gives inphase, median |wrap(phi - pi)|
/// < pi/4 gives antiphase, anything else mixed.
SyncLabel classify_pair(std::span<const double> phi);

/// Window of phases, row-major (samples x n). n = 2 uses classify_pair on
/// theta_0 - theta_1. Otherwise the mean Kuramoto order parameter R decides:
/// R > 0.9 inphase; for n = 3, R < 0.2 with each pairwise median within pi/6
/// of +-2 pi/3 is splay; else mixed.
SyncLabel classify_synchrony(std::span<const double> phases, std::size_t n);

/// |sum_k exp(i theta_k)| / n.
double order_parameter(std::span<const double> phases);

struct SynchronyOptions {
  double r_hi = 0.8;
  double r_lo = 0.3;
  double discard_fraction = 0.2;
  double window_periods = 5.0;
  double stride_periods = 1.0;
  double radius_floor = 0.1;
  /// Spike period; when unset it is 2 pi / |Omega(mean burst radius)| from
  /// the trajectory's model parameters.
  std::optional<double> spike_period;
};

struct WindowLabel {
  double t_start;
  double t_end;
  SyncLabel label;
  double order_parameter;  // mean R over the window
};

struct TransitionEvent {
  double t;
  double u_mean;
  SyncLabel from;
  SyncLabel to;
  std::size_t burst;
};

struct BurstReport {
  BurstSegment segment;
  double spike_period;
  std::vector<WindowLabel> windows;
  std::vector<TransitionEvent> transitions;
};

struct DistanceSummary {
  std::size_t i;
  std::size_t j;
  double mean;
  double max;
};

struct SynchronyReport {
  std::size_t n = 0;
  std::vector<BurstReport> bursts;
  std::vector<TransitionEvent> transitions;
  std::vector<DistanceSummary> distances;
};

/// Windows of window_periods spike periods advance by stride_periods inside
/// each complete burst after the discarded lead-in. A run of equal labels is
/// persistent when it spans at least two window lengths; transitions are
/// emitted between consecutive persistent runs of different definite labels
/// (inphase, antiphase, splay), timed at the centre of the first window of
/// the new run. Throws DomainError when no complete burst remains or when the
/// spike period cannot be determined.
SynchronyReport detect_transitions(const Trajectory& traj, const SynchronyOptions& opt = {});

/// Mean over bursts of (u at the first from->to transition - u_predicted),
/// over bursts that have one. Throws DomainError when none does.
double slow_passage_offset(const SynchronyReport& report, double u_predicted, SyncLabel from,
                           SyncLabel to);
double slow_passage_offset(const Trajectory& traj, double u_predicted, SyncLabel from,
                           SyncLabel to, const SynchronyOptions& opt = {});

}  // namespace bautin
