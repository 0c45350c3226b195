#pragma once

// Flat `section.key = value [unit]` run configuration.
//
// Physical quantities carry an explicit unit token: `J` for energies,
// `1/J` for times, `Hz` for laboratory frequencies and `rad/s` for the
// optional physical anchor of J. Dimensionless keys take no unit.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace majorana {

enum class Unit { none, energy, time, hertz, rad_per_s };

std::string_view unit_token(Unit u);

class RunConfig {
 public:
  using Value = std::variant<bool, std::int64_t, double, std::string,
                             std::vector<std::int64_t>, std::vector<double>>;

  /// Every known key at its default value.
  static RunConfig defaults();
  /// Defaults overridden by the assignments in `text`; '#' starts a comment.
  static RunConfig parse(std::string_view text);
  static RunConfig load(const std::string& path);
  /// Rebuilds a configuration from the `# config:` lines of an emitted CSV.
  static RunConfig from_metadata(std::string_view csv_text);

  /// `raw` is the right-hand side of an assignment, unit included.
  void set(std::string_view key, std::string_view raw);

  bool get_bool(std::string_view key) const;
  std::int64_t get_int(std::string_view key) const;
  double get_real(std::string_view key) const;
  const std::string& get_string(std::string_view key) const;
  const std::vector<std::int64_t>& get_int_list(std::string_view key) const;
  const std::vector<double>& get_real_list(std::string_view key) const;

  /// `key = value unit` lines in key order; doubles printed round-trip exact.
  std::vector<std::string> echo() const;

  /// Cross-key checks: chain sizes within the dense budget, K*N <= 12,
  /// positive sample counts. Throws ConfigError.
  void validate() const;

  bool operator==(const RunConfig& other) const = default;

 private:
  std::map<std::string, Value, std::less<>> values_;
};

}  // namespace majorana
