#pragma once

// Scenario configuration: a flat, namespaced key = value store with typed
// accessors, and the conversion into model, coupling, integrator, initial
// condition, analysis and scan settings.

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "bautin/ensemble.hpp"
#include "bautin/integrator.hpp"
#include "bautin/model.hpp"
#include "bautin/scan.hpp"
#include "bautin/stability.hpp"
#include "bautin/synchrony.hpp"

namespace bautin::cli {

class KeyValueConfig {
 public:
  /// Every known key with its default.
  KeyValueConfig();

  /// Throws ConfigError for unknown keys.
  void set(const std::string& key, const std::string& value);
  /// "key=value" or "key = value".
  void set_assignment(std::string_view assignment);
  /// Line-oriented key = value text, '#' starts a comment.
  void merge_text(std::string_view text, std::string_view origin);
  void merge_file(const std::string& path);

  const std::string& get(const std::string& key) const;
  double get_double(const std::string& key) const;
  std::size_t get_size(const std::string& key) const;
  std::uint64_t get_u64(const std::string& key) const;
  std::vector<double> get_list(const std::string& key) const;

  const std::map<std::string, std::string>& values() const { return values_; }
  /// Canonical text form: sorted "key = value" lines.
  std::string to_text() const;

 private:
  std::map<std::string, std::string> values_;
};

struct ScanSpec {
  std::string kind;  // "branch" or "boundary"
  Plane plane = Plane::sigma;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  std::size_t lambda_n = 0;
  ScanWindow window;
  SeedGrid seeds;
};

struct Scenario {
  ModelParams model;
  CouplingSpec coupling;
  IntegratorConfig integrator;
  Scheme scheme;
  NetworkState initial;
  SynchronyOptions analysis;
  std::size_t replicas;
  ScanSpec scan;
  std::string prefix;
};

/// Throws ConfigError on malformed or inconsistent values.
Scenario build_scenario(const KeyValueConfig& cfg);

}  // namespace bautin::cli
