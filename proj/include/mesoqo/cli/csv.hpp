#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace mesoqo::cli {

struct Table {
  std::string name;  ///< empty for the primary table
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// Shortest representation that parses back to the same double.
/// Non-finite values print as nan, inf, -inf.
std::string format_double(double v);

/// Header row plus one line per row, comma separated, LF terminated.
std::string to_csv(const Table& table);

void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace mesoqo::cli
