#include "bautin/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "bautin/errors.hpp"

namespace bautin::cli {

namespace {

const std::map<std::string, std::string>& defaults() {
  static const std::map<std::string, std::string> d = {
      {"model.omega", "0.01"},
      {"model.a", "0.8"},
      {"model.eta", "0.05"},
      {"model.sigma", "3"},
      {"model.r_m", "1.35"},
      {"coupling.n", "2"},
      {"coupling.kappa1", "0.001"},
      {"coupling.kappa2", "0.2"},
      {"coupling.matrix", ""},
      {"integrator.mode", "noisy"},
      {"integrator.rel_tol", "1e-9"},
      {"integrator.abs_tol", "1e-12"},
      {"integrator.dt", "0.001"},
      {"integrator.t_end", "1000"},
      {"integrator.sample_dt", "0.05"},
      {"integrator.noise_amplitude", "1e-5"},
      {"integrator.seed", "1"},
      {"initial.state", ""},
      {"initial.r0", "0.1"},
      {"initial.u0", "-0.5"},
      {"initial.phase_step", "0.7"},
      {"analysis.replicas", "1"},
      {"analysis.r_hi", "0.8"},
      {"analysis.r_lo", "0.3"},
      {"analysis.discard_fraction", "0.2"},
      {"analysis.window_periods", "5"},
      {"analysis.stride_periods", "1"},
      {"analysis.radius_floor", "0.1"},
      {"scan.kind", "boundary"},
      {"scan.plane", "sigma"},
      {"scan.lambda_min", "1.5"},
      {"scan.lambda_max", "8"},
      {"scan.lambda_n", "100"},
      {"scan.u_min", "-0.999"},
      {"scan.u_max", "0.999"},
      {"scan.u_n", "200"},
      {"scan.tol", "1e-8"},
      {"scan.seed_rl", "20"},
      {"scan.seed_rt", "11"},
      {"scan.seed_phi", "24"},
      {"output.prefix", "run"},
  };
  return d;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  const auto res = std::from_chars(v.data(), end, out);
  if (res.ec != std::errc() || res.ptr != end || !std::isfinite(out)) {
    throw ConfigError(key + ": expected a finite number, got '" + v + "'");
  }
  return out;
}

}  // namespace

KeyValueConfig::KeyValueConfig() : values_(defaults()) {}

void KeyValueConfig::set(const std::string& key, const std::string& value) {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("unknown configuration key '" + key + "'");
  it->second = value;
}

void KeyValueConfig::set_assignment(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("expected key=value, got '" + std::string(assignment) + "'");
  }
  const std::string key = trim(assignment.substr(0, eq));
  if (key.empty()) throw ConfigError("empty key in '" + std::string(assignment) + "'");
  set(key, trim(assignment.substr(eq + 1)));
}

void KeyValueConfig::merge_text(std::string_view text, std::string_view origin) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (trim(line).empty()) continue;
    try {
      set_assignment(line);
    } catch (const ConfigError& e) {
      throw ConfigError(std::string(origin) + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

void KeyValueConfig::merge_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  merge_text(ss.str(), path);
}

const std::string& KeyValueConfig::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("unknown configuration key '" + key + "'");
  return it->second;
}

double KeyValueConfig::get_double(const std::string& key) const {
  return parse_double(key, get(key));
}

std::size_t KeyValueConfig::get_size(const std::string& key) const {
  const std::string& v = get(key);
  std::size_t out = 0;
  const auto* end = v.data() + v.size();
  const auto res = std::from_chars(v.data(), end, out);
  if (res.ec != std::errc() || res.ptr != end) {
    throw ConfigError(key + ": expected a non-negative integer, got '" + v + "'");
  }
  return out;
}

std::uint64_t KeyValueConfig::get_u64(const std::string& key) const {
  const std::string& v = get(key);
  std::uint64_t out = 0;
  const auto* end = v.data() + v.size();
  const auto res = std::from_chars(v.data(), end, out);
  if (res.ec != std::errc() || res.ptr != end) {
    throw ConfigError(key + ": expected an unsigned 64-bit integer, got '" + v + "'");
  }
  return out;
}

std::vector<double> KeyValueConfig::get_list(const std::string& key) const {
  std::vector<double> out;
  std::istringstream in(get(key));
  std::string item;
  while (std::getline(in, item, ',')) {
    const std::string t = trim(item);
    if (t.empty()) continue;
    out.push_back(parse_double(key, t));
  }
  return out;
}

std::string KeyValueConfig::to_text() const {
  std::string out;
  for (const auto& [k, v] : values_) out += k + " = " + v + "\n";
  return out;
}

namespace {

CouplingSpec build_coupling(const KeyValueConfig& cfg) {
  const std::size_t n = cfg.get_size("coupling.n");
  const double k1 = cfg.get_double("coupling.kappa1");
  const double k2 = cfg.get_double("coupling.kappa2");
  auto matrix = cfg.get_list("coupling.matrix");
  if (matrix.empty()) return {k1, k2, n};
  return {k1, k2, n, std::move(matrix)};
}

NetworkState build_initial(const KeyValueConfig& cfg, std::size_t n) {
  const auto explicit_state = cfg.get_list("initial.state");
  if (!explicit_state.empty()) {
    if (explicit_state.size() != NetworkState::kStride * n) {
      throw ConfigError("initial.state needs 3n = " + std::to_string(3 * n) + " values, got " +
                        std::to_string(explicit_state.size()));
    }
    return NetworkState(explicit_state);
  }
  const double r0 = cfg.get_double("initial.r0");
  const double u0 = cfg.get_double("initial.u0");
  const double step = cfg.get_double("initial.phase_step");
  NetworkState s(n);
  for (std::size_t j = 0; j < n; ++j) {
    s.set_z(j, std::polar(r0, step * static_cast<double>(j)));
    s.set_u(j, u0);
  }
  return s;
}

}  // namespace

Scenario build_scenario(const KeyValueConfig& cfg) {
  ModelParams model(cfg.get_double("model.omega"), cfg.get_double("model.a"),
                    cfg.get_double("model.eta"), cfg.get_double("model.sigma"),
                    cfg.get_double("model.r_m"));
  CouplingSpec coupling = build_coupling(cfg);

  IntegratorConfig ic;
  ic.rel_tol = cfg.get_double("integrator.rel_tol");
  ic.abs_tol = cfg.get_double("integrator.abs_tol");
  ic.dt = cfg.get_double("integrator.dt");
  ic.t0 = 0.0;
  ic.t_end = cfg.get_double("integrator.t_end");
  ic.sample_dt = cfg.get_double("integrator.sample_dt");
  ic.noise_amplitude = cfg.get_double("integrator.noise_amplitude");
  ic.rng_seed = cfg.get_u64("integrator.seed");

  const std::string& mode = cfg.get("integrator.mode");
  Scheme scheme;
  if (mode == "adaptive") {
    scheme = Scheme::adaptive;
    if (ic.noise_amplitude != 0.0) {
      throw ConfigError("integrator.mode = adaptive requires integrator.noise_amplitude = 0");
    }
  } else if (mode == "noisy") {
    scheme = Scheme::euler_maruyama;
  } else {
    throw ConfigError("integrator.mode must be 'adaptive' or 'noisy', got '" + mode + "'");
  }

  SynchronyOptions so;
  so.r_hi = cfg.get_double("analysis.r_hi");
  so.r_lo = cfg.get_double("analysis.r_lo");
  so.discard_fraction = cfg.get_double("analysis.discard_fraction");
  so.window_periods = cfg.get_double("analysis.window_periods");
  so.stride_periods = cfg.get_double("analysis.stride_periods");
  so.radius_floor = cfg.get_double("analysis.radius_floor");

  ScanSpec scan;
  scan.kind = cfg.get("scan.kind");
  if (scan.kind != "branch" && scan.kind != "boundary") {
    throw ConfigError("scan.kind must be 'branch' or 'boundary', got '" + scan.kind + "'");
  }
  scan.plane = parse_plane(cfg.get("scan.plane"));
  scan.lambda_min = cfg.get_double("scan.lambda_min");
  scan.lambda_max = cfg.get_double("scan.lambda_max");
  scan.lambda_n = cfg.get_size("scan.lambda_n");
  scan.window.u_min = cfg.get_double("scan.u_min");
  scan.window.u_max = cfg.get_double("scan.u_max");
  scan.window.n_u = cfg.get_size("scan.u_n");
  scan.window.tol = cfg.get_double("scan.tol");
  scan.seeds.n_rl = cfg.get_size("scan.seed_rl");
  scan.seeds.n_rt = cfg.get_size("scan.seed_rt");
  scan.seeds.n_phi = cfg.get_size("scan.seed_phi");

  const std::size_t replicas = cfg.get_size("analysis.replicas");
  if (replicas == 0) throw ConfigError("analysis.replicas must be >= 1");

  NetworkState initial = build_initial(cfg, coupling.n());
  return {model, coupling, ic, scheme, std::move(initial), so, replicas, scan,
          cfg.get("output.prefix")};
}

}  // namespace bautin::cli
