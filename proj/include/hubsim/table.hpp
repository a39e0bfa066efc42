#pragma once
// Copyright 2026 the hubsim authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace hubsim {

using Cell = std::variant<double, std::int64_t, std::string>;

// Column-schema'd numeric results. Cells format identically into CSV and
// JSON so replaying a command byte-reproduces the files.
struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row) {
    if (row.size() != columns.size())
      throw std::invalid_argument("table: row width differs from schema");
    rows.push_back(std::move(row));
  }
};

// Everything needed to replay a run. Wall time is for the terminal summary
// only; it is never serialized, which keeps file outputs byte-reproducible.
struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> config;
  std::uint64_t master_seed = 0;
  double t = 0.0;  // IQPE time scale; 0 when the run involves none
  double e_lo = 0.0;
  double e_hi = 0.0;
  std::string version;
  double wall_seconds = 0.0;
  std::vector<std::uint64_t> per_run_seeds;
};

inline std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

inline std::string format_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

inline void write_csv(std::ostream& os, const ResultTable& t,
                      const RunManifest* m = nullptr) {
  if (m != nullptr) {
    os << "# hubsim " << m->version << '\n';
    os << "# command: " << m->command << '\n';
    os << "# seed: " << m->master_seed << '\n';
    if (m->t != 0.0)
      os << "# time_scale: t=" << format_number(m->t)
         << " e_lo=" << format_number(m->e_lo)
         << " e_hi=" << format_number(m->e_hi) << '\n';
    for (const auto& [k, v] : m->config) os << "# " << k << ": " << v << '\n';
    if (!m->per_run_seeds.empty()) {
      os << "# run_seeds:";
      for (auto s : m->per_run_seeds) os << ' ' << s;
      os << '\n';
    }
  }
  for (std::size_t j = 0; j < t.columns.size(); ++j)
    os << (j ? "," : "") << t.columns[j];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t j = 0; j < row.size(); ++j)
      os << (j ? "," : "") << format_cell(row[j]);
    os << '\n';
  }
}

namespace detail {
inline void json_escape(std::ostream& os, const std::string& s) {
  os << '"';
  for (const char c : s) {
    switch (c) {
      case '"': os << "\\\""; break;
      case '\\': os << "\\\\"; break;
      case '\n': os << "\\n"; break;
      case '\t': os << "\\t"; break;
      case '\r': os << "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          os << buf;
        } else {
          os << c;
        }
    }
  }
  os << '"';
}

inline void json_cell(std::ostream& os, const Cell& c) {
  if (std::holds_alternative<std::string>(c)) {
    json_escape(os, std::get<std::string>(c));
    return;
  }
  // JSON has no inf/nan literal; null keeps the document parseable
  if (std::holds_alternative<double>(c) &&
      !std::isfinite(std::get<double>(c))) {
    os << "null";
    return;
  }
  os << format_cell(c);
}
}  // namespace detail

inline void write_json(std::ostream& os, const ResultTable& t,
                       const RunManifest* m = nullptr) {
  os << "{\n";
  if (m != nullptr) {
    os << "  \"manifest\": {\n";
    os << "    \"version\": ";
    detail::json_escape(os, m->version);
    os << ",\n    \"command\": ";
    detail::json_escape(os, m->command);
    os << ",\n    \"seed\": " << m->master_seed;
    if (m->t != 0.0) {
      os << ",\n    \"time_scale\": {\"t\": " << format_number(m->t)
         << ", \"e_lo\": " << format_number(m->e_lo)
         << ", \"e_hi\": " << format_number(m->e_hi) << "}";
    }
    os << ",\n    \"config\": {";
    for (std::size_t k = 0; k < m->config.size(); ++k) {
      os << (k ? ", " : "");
      detail::json_escape(os, m->config[k].first);
      os << ": ";
      detail::json_escape(os, m->config[k].second);
    }
    os << "}";
    if (!m->per_run_seeds.empty()) {
      os << ",\n    \"run_seeds\": [";
      for (std::size_t k = 0; k < m->per_run_seeds.size(); ++k)
        os << (k ? ", " : "") << m->per_run_seeds[k];
      os << "]";
    }
    os << "\n  },\n";
  }
  os << "  \"columns\": [";
  for (std::size_t j = 0; j < t.columns.size(); ++j) {
    os << (j ? ", " : "");
    detail::json_escape(os, t.columns[j]);
  }
  os << "],\n  \"rows\": [\n";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    os << "    [";
    for (std::size_t j = 0; j < t.rows[r].size(); ++j) {
      os << (j ? ", " : "");
      detail::json_cell(os, t.rows[r][j]);
    }
    os << "]" << (r + 1 < t.rows.size() ? "," : "") << '\n';
  }
  os << "  ]\n}\n";
}

}  // namespace hubsim
