#pragma once

// Result tables and their CSV/JSON serializations.

#include <michelson/cli/run_config.hpp>

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#ifndef MICHELSON_VERSION
#define MICHELSON_VERSION "0.0.0"
#endif

namespace michelson::cli {

using Cell = std::variant<double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, std::string>> metadata;  // regime-specific, ordered
  std::vector<std::string> warnings;
};

namespace detail {

inline std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  return std::get<std::string>(c);
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string r = "\"";
  for (char ch : s) r += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return r + "\"";
}

}  // namespace detail

/// CSV with '#' metadata lines: version, resolved config, regime metadata, warnings.
inline std::string to_csv(const Table& t, const RunConfig& cfg) {
  std::string out = "# michelson_io " MICHELSON_VERSION "\n";
  for (const auto& [k, v] : cfg.resolved()) out += "# " + k + " = " + v + "\n";
  for (const auto& [k, v] : t.metadata) out += "# meta." + k + " = " + v + "\n";
  for (const auto& w : t.warnings) out += "# warning: " + w + "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
  out += "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + detail::csv_escape(detail::cell_text(row[i]));
    out += "\n";
  }
  return out;
}

/// JSON with the same content; numbers keep round-trip precision.
inline std::string to_json(const Table& t, const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["metadata"]["version"] = MICHELSON_VERSION;
  for (const auto& [k, v] : cfg.resolved()) j["metadata"]["config"][k] = v;
  for (const auto& [k, v] : t.metadata) j["metadata"]["results"][k] = v;
  j["metadata"]["warnings"] = t.warnings;
  j["columns"] = t.columns;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    auto r = nlohmann::ordered_json::array();
    for (const auto& c : row) {
      if (const auto* d = std::get_if<double>(&c)) {
        if (std::isfinite(*d)) r.push_back(*d);
        else r.push_back(nullptr);
      } else {
        r.push_back(std::get<std::string>(c));
      }
    }
    j["rows"].push_back(std::move(r));
  }
  return j.dump(2) + "\n";
}

inline std::string serialize(const Table& t, const RunConfig& cfg) {
  return cfg.format == Format::json ? to_json(t, cfg) : to_csv(t, cfg);
}

}  // namespace michelson::cli
