#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "spdc/error.hpp"

namespace spdc::io {

/// Deterministic shortest-round-trip formatting used for every CSV value.
std::string format_double(double v);

/// CSV with a versioned `# spdcsim csv v1 <schema>` first line, `# key = value`
/// metadata comments, one column-header line, then rows.
class CsvFile {
public:
  CsvFile(const std::filesystem::path& path, const std::string& schema);

  void meta(const std::string& key, const std::string& value);
  void meta(const std::string& key, double value);
  void header(const std::vector<std::string>& columns);
  void row(const std::vector<double>& values);

private:
  std::ofstream out_;
  bool header_written_ = false;
};

struct CsvTable {
  std::string schema;
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  /// First metadata value for key, or empty.
  std::string meta_value(const std::string& key) const;
};

CsvTable read_csv(const std::filesystem::path& path);

} // namespace spdc::io
