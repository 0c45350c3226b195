#pragma once

// CSV emission: a header row with bracketed units, "%.16e" data cells, and
// trailing '#' metadata lines.

#include "majorana/config.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace majorana {

inline constexpr std::string_view kToolVersion = "majorana 0.1.0";

class CsvReport {
 public:
  using Cell = std::variant<std::int64_t, double>;

  explicit CsvReport(std::vector<std::string> columns);

  /// Throws UsageError when the row width differs from the header.
  void add_row(std::vector<Cell> row);
  void add_metadata(std::string_view key, std::string_view value);

  /// Config echo, seed, tool version and experiment name.
  void stamp(const RunConfig& config, std::string_view experiment);

  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t row_count() const { return rows_.size(); }
  std::string str() const;

  static std::string format(double v);

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
  std::vector<std::string> metadata_;
};

}  // namespace majorana
