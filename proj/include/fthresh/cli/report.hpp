#pragma once

#include <string>
#include <utility>
#include <deque>
#include <vector>

#include "json.hpp"

namespace fthresh::cli {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;

  void add(std::vector<json> row) {
    if (row.size() != columns.size()) throw std::logic_error("table " + name + ": row width mismatch");
    rows.push_back(std::move(row));
  }
};

struct Report {
  explicit Report(std::string v) : verb(std::move(v)) {}

  std::string verb;
  json provenance = json::object();
  json summary = json::object();
  std::deque<Table> tables;
  int exit_code = 0;

  Table& table(const std::string& name, std::vector<std::string> columns) {
    tables.push_back({name, std::move(columns), {}});
    return tables.back();
  }
  const Table* find(const std::string& name) const {
    for (const auto& t : tables)
      if (t.name == name) return &t;
    return nullptr;
  }
};

inline json to_json(const Report& r) {
  json out = json::object();
  out["schema_version"] = kSchemaVersion;
  out["verb"] = r.verb;
  out["provenance"] = r.provenance;
  out["summary"] = r.summary;
  json tables = json::object();
  for (const auto& t : r.tables) {
    json rows = json::array();
    for (const auto& row : t.rows) {
      json obj = json::object();
      for (std::size_t i = 0; i < t.columns.size(); ++i) obj[t.columns[i]] = row[i];
      rows.push_back(std::move(obj));
    }
    tables[t.name] = {{"columns", t.columns}, {"rows", std::move(rows)}};
  }
  out["tables"] = std::move(tables);
  return out;
}

inline std::string cell_text(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

/// TSV: header + rows per table; a "# name" line precedes each table when
/// there is more than one.
inline std::string render(const Report& r, const std::string& format) {
  if (format == "json") return to_json(r).dump(2) + "\n";
  if (format != "tsv") throw std::invalid_argument("unknown format '" + format + "'");
  std::string out;
  const bool named = r.tables.size() > 1;
  for (std::size_t k = 0; k < r.tables.size(); ++k) {
    const auto& t = r.tables[k];
    if (k) out += "\n";
    if (named) out += "# " + t.name + "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "\t" : "") + t.columns[i];
    out += "\n";
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "\t" : "") + cell_text(row[i]);
      out += "\n";
    }
  }
  return out;
}

}  // namespace fthresh::cli
