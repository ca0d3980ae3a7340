#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace bautin::cli {

enum class PresetKind { simulate, scan, analytic };

struct Preset {
  std::string name;
  PresetKind kind;
  std::string description;
  std::string overrides;  // key = value lines applied over the defaults
};

const std::vector<Preset>& presets();
/// Throws ConfigError for unknown names.
const Preset& find_preset(std::string_view name);
std::string_view kind_name(PresetKind k);

}  // namespace bautin::cli
