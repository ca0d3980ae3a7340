#include "bautin/synchrony.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "bautin/errors.hpp"

namespace bautin {

namespace {

constexpr double kPi = std::numbers::pi;

std::size_t burster_count(const Trajectory& traj) {
  if (traj.dimension % NetworkState::kStride != 0 || traj.dimension == 0) {
    throw DomainError("trajectory is not a network trajectory");
  }
  return traj.dimension / NetworkState::kStride;
}

double radius(const Trajectory& traj, std::size_t s, std::size_t j) {
  return std::hypot(traj.at(s, 3 * j), traj.at(s, 3 * j + 1));
}

double mean_u(const Trajectory& traj, std::size_t s, std::size_t n) {
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) acc += traj.at(s, 3 * j + 2);
  return acc / static_cast<double>(n);
}

double median(std::vector<double> v) {
  const std::size_t m = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(m), v.end());
  if (v.size() % 2 == 1) return v[m];
  const double hi = v[m];
  return 0.5 * (hi + *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(m)));
}

bool definite(SyncLabel l) {
  return l == SyncLabel::inphase || l == SyncLabel::antiphase || l == SyncLabel::splay;
}

}  // namespace

std::vector<double> pairwise_distance(const Trajectory& traj, std::size_t i, std::size_t j) {
  const std::size_t n = burster_count(traj);
  if (i >= n || j >= n) throw DomainError("burster index out of range");
  if (i == j) throw DomainError("pairwise distance needs i != j");
  std::vector<double> d(traj.size());
  for (std::size_t s = 0; s < traj.size(); ++s) {
    const double dx = traj.at(s, 3 * i) - traj.at(s, 3 * j);
    const double dy = traj.at(s, 3 * i + 1) - traj.at(s, 3 * j + 1);
    const double du = traj.at(s, 3 * i + 2) - traj.at(s, 3 * j + 2);
    d[s] = std::sqrt(dx * dx + dy * dy + du * du);
  }
  return d;
}

std::vector<double> mean_radius(const Trajectory& traj) {
  const std::size_t n = burster_count(traj);
  std::vector<double> r(traj.size());
  for (std::size_t s = 0; s < traj.size(); ++s) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += radius(traj, s, j);
    r[s] = acc / static_cast<double>(n);
  }
  return r;
}

std::vector<BurstSegment> segment_bursts(const Trajectory& traj, double r_hi, double r_lo) {
  if (!(r_hi > r_lo) || !(r_lo > 0.0)) throw ConfigError("need r_hi > r_lo > 0");
  const std::size_t n = burster_count(traj);
  const auto r = mean_radius(traj);
  std::vector<BurstSegment> out;
  bool armed = false;
  bool active = false;
  std::size_t start = 0;
  for (std::size_t s = 0; s < r.size(); ++s) {
    if (!active) {
      if (r[s] < r_lo) {
        armed = true;
      } else if (armed && r[s] >= r_hi) {
        active = true;
        start = s;
      }
    } else if (r[s] < r_lo) {
      BurstSegment seg;
      seg.start = start;
      seg.end = s;
      seg.mean_radius.assign(r.begin() + static_cast<std::ptrdiff_t>(start),
                             r.begin() + static_cast<std::ptrdiff_t>(s));
      seg.u_start = mean_u(traj, start, n);
      seg.u_end = mean_u(traj, s - 1, n);
      out.push_back(std::move(seg));
      active = false;
      armed = true;
    }
  }
  return out;
}

std::vector<std::optional<double>> phase_difference_series(const Trajectory& traj, std::size_t i,
                                                           std::size_t j, double floor) {
  const std::size_t n = burster_count(traj);
  if (i >= n || j >= n) throw DomainError("burster index out of range");
  std::vector<std::optional<double>> out(traj.size());
  for (std::size_t s = 0; s < traj.size(); ++s) {
    if (radius(traj, s, i) < floor || radius(traj, s, j) < floor) continue;
    const double ti = std::atan2(traj.at(s, 3 * i + 1), traj.at(s, 3 * i));
    const double tj = std::atan2(traj.at(s, 3 * j + 1), traj.at(s, 3 * j));
    out[s] = wrap_phase(ti - tj);
  }
  return out;
}

std::string_view label_name(SyncLabel l) {
  switch (l) {
    case SyncLabel::inphase:
      return "inphase";
    case SyncLabel::antiphase:
      return "antiphase";
    case SyncLabel::splay:
      return "splay";
    case SyncLabel::mixed:
      return "mixed";
    case SyncLabel::undefined:
      return "undefined";
  }
  return "unknown";
}

SyncLabel classify_pair(std::span<const double> phi) {
  if (phi.empty()) return SyncLabel::undefined;
  std::vector<double> in(phi.size()), anti(phi.size());
  for (std::size_t s = 0; s < phi.size(); ++s) {
    in[s] = std::abs(wrap_phase(phi[s]));
    anti[s] = std::abs(wrap_phase(phi[s] - kPi));
  }
  if (median(in) < kPi / 4.0) return SyncLabel::inphase;
  if (median(anti) < kPi / 4.0) return SyncLabel::antiphase;
  return SyncLabel::mixed;
}

double order_parameter(std::span<const double> phases) {
  std::complex<double> acc = 0.0;
  for (double t : phases) acc += std::polar(1.0, t);
  return std::abs(acc) / static_cast<double>(phases.size());
}

SyncLabel classify_synchrony(std::span<const double> phases, std::size_t n) {
  if (n < 2 || phases.empty() || phases.size() % n != 0) return SyncLabel::undefined;
  const std::size_t samples = phases.size() / n;
  if (n == 2) {
    std::vector<double> phi(samples);
    for (std::size_t s = 0; s < samples; ++s) phi[s] = phases[2 * s] - phases[2 * s + 1];
    return classify_pair(phi);
  }
  double r_mean = 0.0;
  for (std::size_t s = 0; s < samples; ++s) r_mean += order_parameter(phases.subspan(s * n, n));
  r_mean /= static_cast<double>(samples);
  if (r_mean > 0.9) return SyncLabel::inphase;
  if (n == 3 && r_mean < 0.2) {
    constexpr double third = 2.0 * kPi / 3.0;
    for (std::size_t i = 0; i < 3; ++i) {
      const std::size_t j = (i + 1) % 3;
      std::vector<double> dev(samples);
      std::vector<double> dev_neg(samples);
      for (std::size_t s = 0; s < samples; ++s) {
        const double d = phases[s * 3 + i] - phases[s * 3 + j];
        dev[s] = std::abs(wrap_phase(d - third));
        dev_neg[s] = std::abs(wrap_phase(d + third));
      }
      if (std::min(median(dev), median(dev_neg)) >= kPi / 6.0) return SyncLabel::mixed;
    }
    return SyncLabel::splay;
  }
  return SyncLabel::mixed;
}

SynchronyReport detect_transitions(const Trajectory& traj, const SynchronyOptions& opt) {
  const std::size_t n = burster_count(traj);
  if (!(opt.window_periods > 0.0) || !(opt.stride_periods > 0.0)) {
    throw ConfigError("window and stride must be positive");
  }
  if (!(opt.discard_fraction >= 0.0 && opt.discard_fraction < 1.0)) {
    throw ConfigError("discard_fraction must lie in [0, 1)");
  }
  if (!opt.spike_period && !traj.metadata.params) {
    throw DomainError("spike period unknown: trajectory carries no model parameters");
  }

  SynchronyReport rep;
  rep.n = n;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto d = pairwise_distance(traj, i, j);
      double acc = 0.0;
      double mx = 0.0;
      for (double v : d) {
        acc += v;
        mx = std::max(mx, v);
      }
      rep.distances.push_back({i, j, d.empty() ? 0.0 : acc / static_cast<double>(d.size()), mx});
    }
  }

  const auto lead_in =
      static_cast<std::size_t>(std::ceil(opt.discard_fraction * static_cast<double>(traj.size())));
  auto segments = segment_bursts(traj, opt.r_hi, opt.r_lo);
  std::erase_if(segments, [&](const BurstSegment& s) { return s.start < lead_in; });
  if (segments.empty()) throw DomainError("no complete burst after the discarded lead-in");

  std::vector<double> phases;
  for (auto& seg : segments) {
    BurstReport br;
    const std::size_t burst_index = rep.bursts.size();
    double r_bar = 0.0;
    for (double v : seg.mean_radius) r_bar += v;
    r_bar /= static_cast<double>(seg.mean_radius.size());
    if (opt.spike_period) {
      br.spike_period = *opt.spike_period;
    } else {
      const double freq = std::abs(omega_of_r(r_bar, *traj.metadata.params));
      br.spike_period = freq > 0.0 ? 2.0 * kPi / freq : INFINITY;
    }
    const auto w = static_cast<std::size_t>(
        std::max(1.0, std::round(opt.window_periods * br.spike_period / traj.sample_dt)));
    const auto stride = static_cast<std::size_t>(
        std::max(1.0, std::round(opt.stride_periods * br.spike_period / traj.sample_dt)));

    std::vector<std::size_t> window_starts;
    for (std::size_t a = seg.start; std::isfinite(br.spike_period) && a + w <= seg.end;
         a += stride) {
      phases.clear();
      std::size_t defined = 0;
      double r_acc = 0.0;
      for (std::size_t s = a; s < a + w; ++s) {
        bool ok = true;
        for (std::size_t j = 0; j < n; ++j) ok = ok && radius(traj, s, j) >= opt.radius_floor;
        if (!ok) continue;
        ++defined;
        const std::size_t base = phases.size();
        for (std::size_t j = 0; j < n; ++j) {
          phases.push_back(std::atan2(traj.at(s, 3 * j + 1), traj.at(s, 3 * j)));
        }
        r_acc += order_parameter(std::span<const double>(phases).subspan(base, n));
      }
      WindowLabel wl{traj.times[a], traj.times[a + w - 1], SyncLabel::undefined, 0.0};
      if (2 * defined >= w) {
        wl.label = classify_synchrony(phases, n);
        wl.order_parameter = r_acc / static_cast<double>(defined);
      }
      br.windows.push_back(wl);
      window_starts.push_back(a);
    }

    // Runs of equal labels; keep persistent definite ones.
    struct Run {
      SyncLabel label;
      std::size_t first;
    };
    std::vector<Run> runs;
    for (std::size_t i = 0; i < br.windows.size();) {
      std::size_t e = i;
      while (e < br.windows.size() && br.windows[e].label == br.windows[i].label) ++e;
      const std::size_t count = e - i;
      if (definite(br.windows[i].label) && (count - 1) * stride + w >= 2 * w) {
        runs.push_back({br.windows[i].label, i});
      }
      i = e;
    }
    for (std::size_t r = 1; r < runs.size(); ++r) {
      if (runs[r].label == runs[r - 1].label) continue;
      const std::size_t centre = window_starts[runs[r].first] + w / 2;
      TransitionEvent ev{traj.times[centre], mean_u(traj, centre, n), runs[r - 1].label,
                         runs[r].label, burst_index};
      br.transitions.push_back(ev);
      rep.transitions.push_back(ev);
    }
    br.segment = std::move(seg);
    rep.bursts.push_back(std::move(br));
  }
  return rep;
}

double slow_passage_offset(const SynchronyReport& report, double u_predicted, SyncLabel from,
                           SyncLabel to) {
  double acc = 0.0;
  std::size_t count = 0;
  for (const auto& b : report.bursts) {
    for (const auto& ev : b.transitions) {
      if (ev.from == from && ev.to == to) {
        acc += ev.u_mean - u_predicted;
        ++count;
        break;
      }
    }
  }
  if (count == 0) {
    throw DomainError("no " + std::string(label_name(from)) + " -> " + std::string(label_name(to)) +
                      " transition found");
  }
  return acc / static_cast<double>(count);
}

double slow_passage_offset(const Trajectory& traj, double u_predicted, SyncLabel from,
                           SyncLabel to, const SynchronyOptions& opt) {
  return slow_passage_offset(detect_transitions(traj, opt), u_predicted, from, to);
}

}  // namespace bautin
