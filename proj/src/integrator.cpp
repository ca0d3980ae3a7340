#include "bautin/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bautin/errors.hpp"
#include "bautin/rng.hpp"

namespace bautin {

void IntegratorConfig::validate_adaptive() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
    throw ConfigError("integrator tolerances must be > 0");
  }
  if (!std::isfinite(t0) || !std::isfinite(t_end) || !(t_end > t0)) {
    throw ConfigError("integrator.t_end must exceed t0");
  }
  if (!(sample_dt > 0.0)) throw ConfigError("integrator.sample_dt must be > 0");
  if (max_steps == 0) throw ConfigError("integrator.max_steps must be > 0");
}

void IntegratorConfig::validate_fixed_step() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("integrator.dt must be > 0");
  if (!std::isfinite(t0) || !std::isfinite(t_end) || !(t_end > t0)) {
    throw ConfigError("integrator.t_end must exceed t0");
  }
  if (!(sample_dt > 0.0)) throw ConfigError("integrator.sample_dt must be > 0");
  if (!(noise_amplitude >= 0.0) || !std::isfinite(noise_amplitude)) {
    throw ConfigError("integrator.noise_amplitude must be finite and >= 0");
  }
  const double ratio = sample_dt / dt;
  const double whole = std::round(ratio);
  if (whole < 1.0 || std::abs(ratio - whole) > 1e-9 * whole) {
    throw ConfigError("integrator.sample_dt must be a whole multiple of integrator.dt");
  }
}

std::size_t IntegratorConfig::sample_stride() const {
  return static_cast<std::size_t>(std::llround(sample_dt / dt));
}

OdeSystem network_system(const ModelParams& p, const CouplingSpec& k) {
  OdeSystem sys;
  sys.dimension = NetworkState::kStride * k.n();
  sys.rhs = [p, k](double, std::span<const double> y, std::span<double> dy) {
    eval_field_cartesian(y, dy, p, k);
  };
  for (std::size_t j = 0; j < k.n(); ++j) {
    sys.noisy_components.push_back(NetworkState::kStride * j);
    sys.noisy_components.push_back(NetworkState::kStride * j + 1);
  }
  return sys;
}

void DenseSegment::evaluate(double t, std::span<double> out) const {
  if (t == t0) {
    std::copy(y0.begin(), y0.end(), out.begin());
    return;
  }
  if (t == t1) {
    std::copy(y1.begin(), y1.end(), out.begin());
    return;
  }
  const double s = (t - t0) / h;
  const double s1 = 1.0 - s;
  for (std::size_t i = 0; i < y0.size(); ++i) {
    out[i] = y0[i] + s * (c2[i] + s1 * (c3[i] + s * (c4[i] + s1 * c5[i])));
  }
}

double DenseSolution::t_end() const { return segments_.empty() ? 0.0 : segments_.back().t1; }

void DenseSolution::append(DenseSegment segment) {
  if (segment.y0.size() != dimension_) throw DomainError("segment dimension mismatch");
  segments_.push_back(std::move(segment));
}

std::vector<double> DenseSolution::evaluate(double t) const {
  if (segments_.empty() || t < t_begin() || t > t_end()) {
    throw DomainError("time " + std::to_string(t) + " outside the dense solution");
  }
  auto it = std::lower_bound(segments_.begin(), segments_.end(), t,
                             [](const DenseSegment& s, double v) { return s.t1 < v; });
  std::vector<double> out(dimension_);
  it->evaluate(t, out);
  return out;
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                 a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

double rms_scaled(std::span<const double> v, std::span<const double> scale) {
  double acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double q = v[i] / scale[i];
    acc += q * q;
  }
  return std::sqrt(acc / static_cast<double>(v.size()));
}

// Drives the adaptive loop and hands every accepted step to `on_step`.
template <class OnStep>
void run_dopri(const OdeSystem& sys, std::span<const double> y_init, const IntegratorConfig& cfg,
               OnStep&& on_step) {
  cfg.validate_adaptive();
  const std::size_t n = sys.dimension;
  if (y_init.size() != n) {
    throw DomainError("initial state has " + std::to_string(y_init.size()) +
                      " components, system expects " + std::to_string(n));
  }
  if (!all_finite(y_init)) throw NumericError("non-finite initial state");

  std::vector<double> y(y_init.begin(), y_init.end()), y_new(n), tmp(n), sk(n), err(n);
  std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);
  DenseSegment seg;
  seg.y0.resize(n);
  seg.y1.resize(n);
  seg.c2.resize(n);
  seg.c3.resize(n);
  seg.c4.resize(n);
  seg.c5.resize(n);

  double t = cfg.t0;
  const double t_end = cfg.t_end;
  sys.rhs(t, y, k1);

  // Initial step (Hairer, Norsett and Wanner, II.4).
  double h;
  {
    for (std::size_t i = 0; i < n; ++i) sk[i] = cfg.abs_tol + cfg.rel_tol * std::abs(y[i]);
    const double d0 = rms_scaled(y, sk);
    const double d1n = rms_scaled(k1, sk);
    double h0 = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 : 0.01 * d0 / d1n;
    h0 = std::min(h0, t_end - t);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h0 * k1[i];
    sys.rhs(t + h0, tmp, k2);
    for (std::size_t i = 0; i < n; ++i) err[i] = k2[i] - k1[i];
    const double d2 = rms_scaled(err, sk) / h0;
    const double dm = std::max(d1n, d2);
    const double h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 0.2);
    h = std::min({100.0 * h0, h1, t_end - t});
  }

  std::size_t steps = 0;
  bool last_rejected = false;
  while (t < t_end) {
    if (++steps > cfg.max_steps) {
      throw NumericError("exceeded max_steps = " + std::to_string(cfg.max_steps) + " at t = " +
                         std::to_string(t));
    }
    bool last = false;
    if (t + 1.01 * h >= t_end) {
      h = t_end - t;
      last = true;
    }
    if (h < 1e-14 * std::max(1.0, std::abs(t))) {
      throw NumericError("step-size underflow at t = " + std::to_string(t));
    }

    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * a21 * k1[i];
    sys.rhs(t + c2 * h, tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    sys.rhs(t + c3 * h, tmp, k3);
    for (std::size_t i = 0; i < n; ++i) {
      tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    }
    sys.rhs(t + c4 * h, tmp, k4);
    for (std::size_t i = 0; i < n; ++i) {
      tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    }
    sys.rhs(t + c5 * h, tmp, k5);
    for (std::size_t i = 0; i < n; ++i) {
      tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    }
    const double t_new = last ? t_end : t + h;
    sys.rhs(t_new, tmp, k6);
    for (std::size_t i = 0; i < n; ++i) {
      y_new[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
    }
    sys.rhs(t_new, y_new, k7);

    for (std::size_t i = 0; i < n; ++i) {
      err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      sk[i] = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
    }
    const double e = rms_scaled(err, sk);

    if (!std::isfinite(e)) {
      h *= 0.2;
      last_rejected = true;
      continue;
    }
    if (e > 1.0) {
      h *= std::max(0.2, 0.9 * std::pow(e, -0.2));
      last_rejected = true;
      continue;
    }

    if (!all_finite(y_new)) throw NumericError("non-finite state at t = " + std::to_string(t_new));

    seg.t0 = t;
    seg.t1 = t_new;
    seg.h = h;
    for (std::size_t i = 0; i < n; ++i) {
      const double ydiff = y_new[i] - y[i];
      const double bspl = h * k1[i] - ydiff;
      seg.y0[i] = y[i];
      seg.y1[i] = y_new[i];
      seg.c2[i] = ydiff;
      seg.c3[i] = bspl;
      seg.c4[i] = ydiff - h * k7[i] - bspl;
      seg.c5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] +
                       d7 * k7[i]);
    }
    on_step(static_cast<const DenseSegment&>(seg));

    t = t_new;
    y.swap(y_new);
    k1.swap(k7);
    double factor = std::clamp(0.9 * std::pow(std::max(e, 1e-16), -0.2), 0.2, 10.0);
    if (last_rejected) factor = std::min(factor, 1.0);
    h *= factor;
    last_rejected = false;
  }
}

std::size_t sample_count(double t_first, double t_last, double sample_dt) {
  return static_cast<std::size_t>(std::floor((t_last - t_first) / sample_dt + 1e-9)) + 1;
}

// Emits uniform samples from consecutive segments.
class Resampler {
 public:
  Resampler(Trajectory& out, double t_first, double t_last)
      : out_(out), t_first_(t_first), t_last_(t_last),
        count_(sample_count(t_first, t_last, out.sample_dt)) {
    out_.times.reserve(count_);
    out_.values.reserve(count_ * out_.dimension);
  }

  void feed(const DenseSegment& seg) {
    while (next_ < count_) {
      double t = t_first_ + static_cast<double>(next_) * out_.sample_dt;
      if (next_ + 1 == count_ && t > t_last_) t = t_last_;  // rounding at the grid end
      if (t > seg.t1) return;
      if (t < seg.t0) {
        ++next_;
        continue;
      }
      const std::size_t base = out_.values.size();
      out_.values.resize(base + out_.dimension);
      seg.evaluate(t, std::span<double>(out_.values.data() + base, out_.dimension));
      out_.times.push_back(t);
      ++next_;
    }
  }

  bool complete() const { return next_ == count_; }

 private:
  Trajectory& out_;
  double t_first_;
  double t_last_;
  std::size_t count_;
  std::size_t next_ = 0;
};

}  // namespace

DenseSolution integrate_dense(const OdeSystem& sys, std::span<const double> y0,
                              const IntegratorConfig& cfg) {
  DenseSolution sol;
  sol.set_dimension(sys.dimension);
  run_dopri(sys, y0, cfg, [&](const DenseSegment& s) { sol.append(s); });
  return sol;
}

Trajectory resample(const DenseSolution& solution, double sample_dt) {
  return resample(solution, sample_dt, solution.t_begin(), solution.t_end());
}

Trajectory resample(const DenseSolution& solution, double sample_dt, double t_first,
                    double t_last) {
  if (!(sample_dt > 0.0)) throw DomainError("sample_dt must be > 0");
  if (solution.segments().empty()) throw DomainError("empty dense solution");
  if (t_first < solution.t_begin() || t_last > solution.t_end() || t_last < t_first) {
    throw DomainError("resampling window outside the dense solution");
  }
  Trajectory out;
  out.dimension = solution.dimension();
  out.t0 = t_first;
  out.sample_dt = sample_dt;
  Resampler rs(out, t_first, t_last);
  for (const auto& seg : solution.segments()) {
    if (seg.t1 < t_first) continue;
    rs.feed(seg);
    if (rs.complete()) break;
  }
  if (!rs.complete()) throw DomainError("resampling grid overruns the dense solution");
  return out;
}

Trajectory integrate_deterministic(const OdeSystem& sys, std::span<const double> y0,
                                   const IntegratorConfig& cfg) {
  if (cfg.noise_amplitude != 0.0) {
    throw ConfigError("adaptive integration requires noise_amplitude == 0");
  }
  cfg.validate_adaptive();
  Trajectory out;
  out.dimension = sys.dimension;
  out.t0 = cfg.t0;
  out.sample_dt = cfg.sample_dt;
  out.metadata.config = cfg;
  out.metadata.seed = cfg.rng_seed;
  out.metadata.stochastic = false;
  Resampler rs(out, cfg.t0, cfg.t_end);
  run_dopri(sys, y0, cfg, [&](const DenseSegment& s) { rs.feed(s); });
  return out;
}

Trajectory integrate_noisy(const OdeSystem& sys, std::span<const double> y0,
                           const IntegratorConfig& cfg) {
  cfg.validate_fixed_step();
  const std::size_t n = sys.dimension;
  if (y0.size() != n) {
    throw DomainError("initial state has " + std::to_string(y0.size()) +
                      " components, system expects " + std::to_string(n));
  }
  for (std::size_t c : sys.noisy_components) {
    if (c >= n) throw DomainError("noisy component index out of range");
  }
  const std::size_t stride = cfg.sample_stride();
  const auto n_steps =
      static_cast<std::size_t>(std::floor((cfg.t_end - cfg.t0) / cfg.dt + 1e-9));
  if (n_steps > cfg.max_steps) throw NumericError("run needs more than max_steps steps");
  const std::size_t n_samples = n_steps / stride + 1;

  Trajectory out;
  out.dimension = n;
  out.t0 = cfg.t0;
  out.sample_dt = static_cast<double>(stride) * cfg.dt;
  out.metadata.config = cfg;
  out.metadata.seed = cfg.rng_seed;
  out.metadata.stochastic = cfg.noise_amplitude != 0.0;
  out.times.reserve(n_samples);
  out.values.reserve(n_samples * n);

  std::vector<double> y(y0.begin(), y0.end()), f(n);
  NormalStream rng(cfg.rng_seed);
  const double scale = cfg.noise_amplitude * std::sqrt(cfg.dt);
  const double dt = cfg.dt;

  auto record = [&](std::size_t step) {
    out.times.push_back(cfg.t0 + static_cast<double>(step) * dt);
    out.values.insert(out.values.end(), y.begin(), y.end());
  };
  record(0);
  for (std::size_t s = 0; s < n_steps; ++s) {
    sys.rhs(cfg.t0 + static_cast<double>(s) * dt, y, f);
    for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + dt * f[i];
    if (scale != 0.0) {
      for (std::size_t c : sys.noisy_components) y[c] = y[c] + scale * rng.next();
    }
    if ((s + 1) % stride == 0) {
      if (!all_finite(y)) {
        throw NumericError("non-finite state at t = " +
                           std::to_string(cfg.t0 + static_cast<double>(s + 1) * dt));
      }
      record(s + 1);
    }
  }
  return out;
}

}  // namespace bautin
