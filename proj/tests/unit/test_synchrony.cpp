#include <cmath>
#include <numbers>
#include <vector>

#include "bautin/errors.hpp"
#include "bautin/synchrony.hpp"
#include "doctest.h"

using namespace bautin;

namespace {

constexpr double kPi = std::numbers::pi;

// n bursters spiking with period 1; radius 1.2 on [k*T, k*T + active), 0.05
// otherwise. phase_of(t, j, burst_time) gives the offset of burster j.
template <class Phase>
Trajectory synthetic(std::size_t n, int bursts, double period, double active, Phase phase_of) {
  Trajectory tr;
  tr.dimension = 3 * n;
  tr.sample_dt = 0.01;
  const auto samples = static_cast<std::size_t>(bursts * period / tr.sample_dt);
  for (std::size_t s = 0; s < samples; ++s) {
    const double t = s * tr.sample_dt;
    const double tb = std::fmod(t, period);
    const bool on = tb < active;
    const double r = on ? 1.2 : 0.05;
    const double u = on ? -tb / active : -1.0 + (tb - active) / (period - active);
    tr.times.push_back(t);
    for (std::size_t j = 0; j < n; ++j) {
      const double th = 2 * kPi * t + phase_of(tb / active, j);
      tr.values.insert(tr.values.end(), {r * std::cos(th), r * std::sin(th), u});
    }
  }
  return tr;
}

SynchronyOptions options() {
  SynchronyOptions o;
  o.spike_period = 1.0;
  o.discard_fraction = 0.0;
  return o;
}

}  // namespace

TEST_CASE("pair labels") {
  const std::vector<double> in = {0.1, -0.2, 0.05};
  const std::vector<double> anti = {kPi - 0.1, -kPi + 0.2, kPi};
  const std::vector<double> mixed = {kPi / 2, kPi / 2 + 0.1, -kPi / 2};
  CHECK(classify_pair(in) == SyncLabel::inphase);
  CHECK(classify_pair(anti) == SyncLabel::antiphase);
  CHECK(classify_pair(mixed) == SyncLabel::mixed);
}

TEST_CASE("order parameter and splay") {
  const std::vector<double> same = {0.3, 0.3, 0.3};
  const std::vector<double> splay = {0.0, 2 * kPi / 3, -2 * kPi / 3};
  CHECK(order_parameter(same) == doctest::Approx(1.0));
  CHECK(order_parameter(splay) < 1e-12);
  std::vector<double> window;
  for (int s = 0; s < 20; ++s) {
    const double th = 0.1 * s;
    window.insert(window.end(), {th, th + 2 * kPi / 3, th + 4 * kPi / 3});
  }
  CHECK(classify_synchrony(window, 3) == SyncLabel::splay);
  window.clear();
  for (int s = 0; s < 20; ++s) window.insert(window.end(), {0.1 * s, 0.1 * s, 0.1 * s + 0.01});
  CHECK(classify_synchrony(window, 3) == SyncLabel::inphase);
}

TEST_CASE("burst segmentation uses hysteresis and drops partial bursts") {
  const auto tr = synthetic(1, 4, 50.0, 30.0, [](double, std::size_t) { return 0.0; });
  const auto segs = segment_bursts(tr);
  // The record starts inside a burst, so the first one is partial.
  CHECK(segs.size() == 3);
  for (const auto& s : segs) {
    CHECK(s.end > s.start);
    CHECK(s.mean_radius.front() >= 0.8);
  }
}

TEST_CASE("one inphase to antiphase transition per burst") {
  const auto tr = synthetic(2, 4, 50.0, 30.0, [](double frac, std::size_t j) {
    return j == 1 && frac > 0.5 ? kPi : 0.0;
  });
  const auto rep = detect_transitions(tr, options());
  REQUIRE(rep.bursts.size() == 3);
  for (const auto& b : rep.bursts) {
    REQUIRE(b.transitions.size() == 1);
    CHECK(b.transitions[0].from == SyncLabel::inphase);
    CHECK(b.transitions[0].to == SyncLabel::antiphase);
    const double t_switch = std::floor(b.transitions[0].t / 50.0) * 50.0 + 15.0;
    CHECK(std::abs(b.transitions[0].t - t_switch) < 5.0);
  }
  CHECK(rep.transitions.size() == 3);
  REQUIRE(rep.distances.size() == 1);
  CHECK(rep.distances[0].max == doctest::Approx(2.4).epsilon(1e-3));
}

TEST_CASE("brief flickers are not transitions") {
  const auto tr = synthetic(2, 4, 50.0, 30.0, [](double frac, std::size_t j) {
    return j == 1 && frac > 0.5 && frac < 0.55 ? kPi : 0.0;
  });
  for (const auto& b : detect_transitions(tr, options()).bursts) CHECK(b.transitions.empty());
}

TEST_CASE("splay to inphase for three bursters") {
  const auto tr = synthetic(3, 3, 60.0, 40.0, [](double frac, std::size_t j) {
    return frac < 0.5 ? 2 * kPi / 3 * j : 0.0;
  });
  const auto rep = detect_transitions(tr, options());
  REQUIRE(rep.bursts.size() == 2);
  for (const auto& b : rep.bursts) {
    REQUIRE(b.transitions.size() == 1);
    CHECK(b.transitions[0].from == SyncLabel::splay);
    CHECK(b.transitions[0].to == SyncLabel::inphase);
  }
}

TEST_CASE("slow passage offset is measured from the prediction") {
  const auto tr = synthetic(2, 4, 50.0, 30.0, [](double frac, std::size_t j) {
    return j == 1 && frac > 0.5 ? kPi : 0.0;
  });
  const double off = slow_passage_offset(tr, -0.2, SyncLabel::inphase, SyncLabel::antiphase, options());
  // Switch at u = -0.5; the event sits at the centre of the first new window.
  CHECK(off < -0.29);
  CHECK(off > -0.45);
}

TEST_CASE("degenerate inputs") {
  const auto quiet = synthetic(2, 2, 50.0, 0.0, [](double, std::size_t) { return 0.0; });
  CHECK_THROWS_AS(detect_transitions(quiet, options()), DomainError);
  const auto tr = synthetic(2, 3, 50.0, 30.0, [](double, std::size_t) { return 0.0; });
  CHECK_THROWS_AS(detect_transitions(tr, {}), DomainError);
  auto bad = options();
  bad.window_periods = 0.0;
  CHECK_THROWS_AS(detect_transitions(tr, bad), ConfigError);
}
