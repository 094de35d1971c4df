#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fthresh/cli/report.hpp"
#include "fthresh/exactnum.hpp"
#include "fthresh/primesweep.hpp"

namespace fthresh::cli {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  if (!out) throw IoError("write failed for '" + path + "'");
}

namespace detail {

inline NuRecord record_from_json(const json& row) {
  auto num = [&](const char* key) -> std::uint64_t {
    if (!row.contains(key)) throw std::invalid_argument(std::string("nu table row lacks '") + key + "'");
    const auto& v = row.at(key);
    if (v.is_number_unsigned() || v.is_number_integer()) return v.get<std::uint64_t>();
    if (v.is_string()) return std::stoull(v.get<std::string>());
    throw std::invalid_argument(std::string("nu table field '") + key + "' is not an integer");
  };
  NuRecord r;
  r.p = static_cast<std::uint32_t>(num("p"));
  r.e = static_cast<unsigned>(num("e"));
  r.nu = num("nu");
  r.J_label = row.contains("J_label") ? row.at("J_label").get<std::string>() : "m";
  return r;
}

inline NuTable table_from_json(const json& doc) {
  const json* rows = nullptr;
  if (doc.contains("tables") && doc["tables"].contains("nu")) rows = &doc["tables"]["nu"]["rows"];
  else if (doc.contains("rows")) rows = &doc["rows"];
  else if (doc.is_array()) rows = &doc;
  if (!rows || !rows->is_array()) throw std::invalid_argument("JSON document holds no nu table");
  NuTable t;
  for (const auto& row : *rows) t.rows.push_back(record_from_json(row));
  t.sort();
  return t;
}

inline std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == '\t') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

inline NuTable table_from_tsv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> header;
  bool named = false, in_nu = true;
  NuTable t;
  while (std::getline(in, line)) {
    if (line.empty()) {
      header.clear();
      continue;
    }
    if (line.rfind("# ", 0) == 0) {
      named = true;
      in_nu = line.substr(2) == "nu";
      header.clear();
      continue;
    }
    if (named && !in_nu) continue;
    auto cells = split_tabs(line);
    if (header.empty()) {
      header = cells;
      continue;
    }
    json row = json::object();
    for (std::size_t i = 0; i < header.size() && i < cells.size(); ++i) row[header[i]] = cells[i];
    t.rows.push_back(record_from_json(row));
  }
  if (t.rows.empty()) throw std::invalid_argument("TSV holds no nu rows");
  t.sort();
  return t;
}

}  // namespace detail

/// Accepts a nu_table JSON object, a full report (tables.nu), or TSV.
inline NuTable load_nu_table(const std::string& path) {
  std::string text = read_file(path);
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (text[first] == '{' || text[first] == '[')) {
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& ex) {
      throw std::invalid_argument("malformed JSON in '" + path + "': " + ex.what());
    }
    return detail::table_from_json(doc);
  }
  return detail::table_from_tsv(text);
}

/// --b: an existing file's contents (comment lines with '#' dropped) or the expression itself.
inline RationalPoly load_b(const std::string& arg) {
  std::string text = arg;
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) {
    std::istringstream in(read_file(arg));
    std::string line;
    text.clear();
    while (std::getline(in, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      text += line + " ";
    }
  }
  return parse_rational_poly(text, "s");
}

}  // namespace fthresh::cli
