#include "cptloc/table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace cptloc {

ResultTable::ResultTable(std::vector<std::string> column_names)
    : names_(std::move(column_names)), columns_(names_.size()) {
  std::set<std::string> seen(names_.begin(), names_.end());
  if (seen.size() != names_.size()) {
    throw ConfigError("ResultTable: column names must be unique");
  }
}

void ResultTable::add_meta(const std::string& key, const std::string& value) {
  meta_.emplace_back(key, value);
}

void ResultTable::add_row(const std::vector<double>& row) {
  if (row.size() != columns_.size()) {
    throw ConfigError("ResultTable: row width does not match column count");
  }
  for (std::size_t i = 0; i < row.size(); ++i) columns_[i].push_back(row[i]);
}

std::size_t ResultTable::rows() const { return columns_.empty() ? 0 : columns_[0].size(); }

const std::vector<double>& ResultTable::column(const std::string& name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw ConfigError("ResultTable: no column named " + name);
  return columns_[static_cast<std::size_t>(it - names_.begin())];
}

std::string ResultTable::format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

double ResultTable::round_to_file_precision(double v) {
  if (!std::isfinite(v)) return v;
  return std::strtod(format_value(v).c_str(), nullptr);
}

std::string ResultTable::to_csv() const {
  std::ostringstream out;
  for (const auto& [key, value] : meta_) out << "# " << key << ": " << value << "\n";
  for (std::size_t c = 0; c < names_.size(); ++c) {
    out << (c ? "," : "") << names_[c];
  }
  out << "\n";
  const std::size_t n = rows();
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < names_.size(); ++c) {
      out << (c ? "," : "") << format_value(columns_[c][r]);
    }
    out << "\n";
  }
  return out.str();
}

ResultTable ResultTable::from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  ResultTable table;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string body = line.substr(1);
      if (!body.empty() && body[0] == ' ') body.erase(0, 1);
      const auto colon = body.find(": ");
      if (colon != std::string::npos) {
        table.meta_.emplace_back(body.substr(0, colon), body.substr(colon + 2));
      } else {
        table.meta_.emplace_back(body, "");
      }
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream fieldstream(line);
    std::string field;
    while (std::getline(fieldstream, field, ',')) fields.push_back(field);
    if (!have_header) {
      table.names_ = fields;
      table.columns_.assign(fields.size(), {});
      have_header = true;
      continue;
    }
    if (fields.size() != table.names_.size()) {
      throw ConfigError("ResultTable::from_csv: ragged row");
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      table.columns_[c].push_back(std::strtod(fields[c].c_str(), nullptr));
    }
  }
  if (!have_header) throw ConfigError("ResultTable::from_csv: missing header row");
  return table;
}

std::string ResultTable::to_json() const {
  nlohmann::ordered_json j;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [key, value] : meta_) meta[key] = value;
  j["meta"] = std::move(meta);
  nlohmann::ordered_json cols = nlohmann::ordered_json::array();
  for (std::size_t c = 0; c < names_.size(); ++c) {
    nlohmann::ordered_json col;
    col["name"] = names_[c];
    nlohmann::ordered_json values = nlohmann::ordered_json::array();
    for (double v : columns_[c]) values.push_back(round_to_file_precision(v));
    col["values"] = std::move(values);
    cols.push_back(std::move(col));
  }
  j["columns"] = std::move(cols);
  return j.dump(2) + "\n";
}

ResultTable ResultTable::from_json(const std::string& text) {
  const auto j = nlohmann::ordered_json::parse(text);
  ResultTable table;
  if (j.contains("meta")) {
    for (const auto& [key, value] : j.at("meta").items()) {
      table.meta_.emplace_back(key, value.get<std::string>());
    }
  }
  for (const auto& col : j.at("columns")) {
    table.names_.push_back(col.at("name").get<std::string>());
    table.columns_.push_back(col.at("values").get<std::vector<double>>());
  }
  return table;
}

void ResultTable::write_file(const std::string& path, const std::string& format) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("ResultTable: cannot open " + path + " for writing");
  out << (format == "json" ? to_json() : to_csv());
}

ResultTable ResultTable::read_file(const std::string& path, const std::string& format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("ResultTable: cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return format == "json" ? from_json(buffer.str()) : from_csv(buffer.str());
}

}  // namespace cptloc
