#include "bautin/cli/output.hpp"

#include <cmath>
#include <cstdio>

#include "bautin/errors.hpp"

namespace bautin::cli {

std::string RunManifest::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    h ^= 0xff;
    h *= 0x100000001b3ULL;
  };
  mix(command);
  mix(config_text);
  mix(std::to_string(seed));
  mix(version);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

nlohmann::json RunManifest::to_json() const {
  return {{"command", command},   {"config", config_text},  {"seed", seed},
          {"version", version},   {"wall_time_s", wall_time_s}, {"outputs", outputs},
          {"hash", hash()}};
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::string& manifest_hash,
                     const std::vector<std::string>& header)
    : out_(path), columns_(header.size()) {
  if (!out_) throw Error("cannot write '" + path.string() + "'");
  out_ << "# manifest " << manifest_hash << '\n';
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out_ << ',';
    out_ << csv_field(header[i]);
  }
  out_ << '\n';
}

CsvWriter& CsvWriter::add(double v) { return add(std::string_view(format_double(v))); }

CsvWriter& CsvWriter::add(std::size_t v) { return add(std::string_view(std::to_string(v))); }

CsvWriter& CsvWriter::add(std::string_view s) {
  if (in_row_++) out_ << ',';
  out_ << csv_field(s);
  return *this;
}

CsvWriter& CsvWriter::add_empty() { return add(std::string_view()); }

void CsvWriter::end_row() {
  if (in_row_ != columns_) {
    throw Error("CSV row has " + std::to_string(in_row_) + " fields, header has " +
                std::to_string(columns_));
  }
  out_ << '\n';
  in_row_ = 0;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  write_text(path, j.dump(2) + "\n");
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
}

}  // namespace bautin::cli
