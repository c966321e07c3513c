#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gflc {

// Raw comma-separated table. Kept as strings so tools can echo input files
// verbatim while appending columns.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::optional<std::size_t> column(std::string_view name) const;
  void add_column(std::string name, std::vector<std::string> values);
};

CsvTable parse_csv(std::istream& in);
CsvTable read_csv_file(const std::filesystem::path& path);
void write_csv(std::ostream& out, const CsvTable& table);
void write_csv_file(const std::filesystem::path& path, const CsvTable& table);

// Shortest decimal string that round-trips the value.
std::string format_double(double value);

}  // namespace gflc
