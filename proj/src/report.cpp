#include "majorana/report.hpp"

#include "majorana/error.hpp"

#include <cstdio>

namespace majorana {

CsvReport::CsvReport(std::vector<std::string> columns)
    : columns_(std::move(columns)) {
  if (columns_.empty()) throw UsageError("CsvReport: no columns");
}

void CsvReport::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size())
    throw UsageError("CsvReport: row has " + std::to_string(row.size()) +
                     " cells, header has " + std::to_string(columns_.size()));
  rows_.push_back(std::move(row));
}

void CsvReport::add_metadata(std::string_view key, std::string_view value) {
  metadata_.push_back("# " + std::string(key) + ": " + std::string(value));
}

void CsvReport::stamp(const RunConfig& config, std::string_view experiment) {
  for (const auto& line : config.echo()) add_metadata("config", line);
  add_metadata("seed", std::to_string(config.get_int("run.seed")));
  add_metadata("version", kToolVersion);
  add_metadata("experiment", experiment);
}

std::string CsvReport::format(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

std::string CsvReport::str() const {
  std::string out;
  for (std::size_t c = 0; c < columns_.size(); ++c)
    out += (c ? "," : "") + columns_[c];
  out += '\n';
  for (const auto& row : rows_) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      if (const auto* i = std::get_if<std::int64_t>(&row[c]))
        out += std::to_string(*i);
      else
        out += format(std::get<double>(row[c]));
    }
    out += '\n';
  }
  for (const auto& m : metadata_) out += m + '\n';
  return out;
}

}  // namespace majorana
