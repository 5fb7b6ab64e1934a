#pragma once

#include <string>
#include <vector>

#include "cptloc/errors.hpp"

namespace cptloc {

// Rectangular table of named real columns with provenance metadata.
//
// CSV form: '#'-prefixed provenance lines, a comma-separated header row, then
// data rows at 12 significant digits. JSON mirrors the columns as arrays under
// "columns" with the provenance in a "meta" object. Both forms are stable
// under a serialize/parse cycle: re-parsing an emitted file and re-emitting it
// reproduces the bytes and the values exactly.
class ResultTable {
 public:
  ResultTable() = default;
  explicit ResultTable(std::vector<std::string> column_names);

  void add_meta(const std::string& key, const std::string& value);
  const std::vector<std::pair<std::string, std::string>>& meta() const { return meta_; }

  void add_row(const std::vector<double>& row);
  std::size_t rows() const;
  std::size_t cols() const { return columns_.size(); }
  const std::vector<std::string>& column_names() const { return names_; }
  const std::vector<double>& column(const std::string& name) const;
  double at(std::size_t row, std::size_t col) const { return columns_[col][row]; }

  std::string to_csv() const;
  std::string to_json() const;
  static ResultTable from_csv(const std::string& text);
  static ResultTable from_json(const std::string& text);

  void write_file(const std::string& path, const std::string& format) const;
  static ResultTable read_file(const std::string& path, const std::string& format);

  // Nearest double to the 12-significant-digit decimal rendering of v; the
  // file-precision policy in one place.
  static double round_to_file_precision(double v);
  static std::string format_value(double v);

 private:
  std::vector<std::pair<std::string, std::string>> meta_;
  std::vector<std::string> names_;
  std::vector<std::vector<double>> columns_;  // column-major
};

}  // namespace cptloc
