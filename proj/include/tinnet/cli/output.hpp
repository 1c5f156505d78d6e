#pragma once

// Result tables: CSV with a `#` manifest header, a JSON mirror, and the
// side-car run manifest with artifact checksums.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace tinnet::cli {

using Cell = std::variant<std::string, double, std::int64_t>;

// Shortest round-trip form, so identical doubles print identically.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string format_cell(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  return std::to_string(std::get<std::int64_t>(c));
}

struct ManifestEntry {
  std::string key;
  std::string value;
  std::string source;  // default | config | flag; kept out of the tables so reruns from a manifest match
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw std::logic_error("Table::add: row width does not match the header");
    rows.push_back(std::move(row));
  }

  std::size_t column(std::string_view name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
      if (columns[i] == name) return i;
    throw std::out_of_range("no column '" + std::string(name) + "'");
  }
};

inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

inline std::string render_csv(const Table& t, const std::vector<ManifestEntry>& manifest) {
  std::ostringstream os;
  for (const auto& e : manifest) os << "# " << e.key << " = " << e.value << "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << csv_escape(t.columns[i]);
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_escape(format_cell(row[i]));
    os << '\n';
  }
  return os.str();
}

inline std::string render_json(const Table& t, const std::vector<ManifestEntry>& manifest) {
  nlohmann::ordered_json j;
  auto& m = j["manifest"] = nlohmann::ordered_json::object();
  for (const auto& e : manifest) m[e.key] = e.value;
  j["columns"] = t.columns;
  auto& rows = j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      const auto& c = row[i];
      if (const auto* s = std::get_if<std::string>(&c)) r[t.columns[i]] = *s;
      else if (const auto* d = std::get_if<double>(&c)) {
        if (std::isfinite(*d)) r[t.columns[i]] = *d;
        else r[t.columns[i]] = format_double(*d);  // JSON has no NaN or infinity
      } else r[t.columns[i]] = std::get<std::int64_t>(c);
    }
    rows.push_back(std::move(r));
  }
  return j.dump(2) + "\n";
}

// The manifest is itself a loadable config: resolved keys are plain
// `key = value` lines, everything else is commented.
inline std::string render_manifest(const std::vector<ManifestEntry>& config_entries,
                                   const std::vector<ManifestEntry>& run_entries, const std::string& artifact,
                                   const std::string& artifact_bytes) {
  std::ostringstream os;
  os << "# tinnet run manifest\n";
  for (const auto& e : run_entries) os << "# " << e.key << " = " << e.value << "  (" << e.source << ")\n";
  os << "# artifact = " << artifact << "\n";
  os << "# artifact_bytes = " << artifact_bytes.size() << "\n";
  os << "# artifact_fnv1a64 = " << hex64(fnv1a64(artifact_bytes)) << "\n";
  for (const auto& e : config_entries) os << e.key << " = " << e.value << "  # " << e.source << "\n";
  return os.str();
}

inline void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << bytes;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace tinnet::cli
