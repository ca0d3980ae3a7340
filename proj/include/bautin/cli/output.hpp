#pragma once

// Plot-ready serialization: CSV with 17 significant digits and a leading
// "# manifest <hash>" comment line, JSON summaries carrying the manifest.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace bautin::cli {

inline constexpr std::string_view kToolVersion = "0.1.0";

struct RunManifest {
  std::string command;
  std::string config_text;  // canonical resolved configuration
  std::uint64_t seed = 0;
  std::string version{kToolVersion};
  double wall_time_s = 0.0;
  std::vector<std::string> outputs;

  /// FNV-1a 64 over command, configuration, seed and version (wall time and
  /// the output list are excluded), as 16 hex digits.
  std::string hash() const;
  nlohmann::json to_json() const;
};

std::string format_double(double v);
/// RFC 4180 quoting when the field contains a comma, quote or line break.
std::string csv_field(std::string_view s);

class CsvWriter {
 public:
  /// Throws Error when the file cannot be opened.
  CsvWriter(const std::filesystem::path& path, const std::string& manifest_hash,
            const std::vector<std::string>& header);

  CsvWriter& add(double v);
  CsvWriter& add(std::string_view s);
  CsvWriter& add(std::size_t v);
  CsvWriter& add_empty();
  void end_row();

 private:
  std::ofstream out_;
  std::size_t columns_;
  std::size_t in_row_ = 0;
};

void write_json(const std::filesystem::path& path, const nlohmann::json& j);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace bautin::cli
