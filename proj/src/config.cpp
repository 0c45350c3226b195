#include "majorana/config.hpp"

#include "majorana/error.hpp"
#include "majorana/pauli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace majorana {
namespace {

enum class Kind { boolean, integer, real, choice, int_list, real_list };

struct KeySpec {
  std::string_view key;
  Kind kind;
  Unit unit;
  std::string_view default_raw;
  std::vector<std::string_view> choices;
};

const std::vector<KeySpec>& schema() {
  static const std::vector<KeySpec> specs = {
      {"model.N", Kind::integer, Unit::none, "3", {}},
      {"model.j12_ratio", Kind::real, Unit::none, "1.01", {}},
      {"model.j13_over_j12", Kind::real, Unit::none, "0.125", {}},
      {"model.include_nnn", Kind::boolean, Unit::none, "false", {}},
      {"noise.delta_hz", Kind::real, Unit::energy, "1e-3 J", {}},
      {"noise.random_sign", Kind::boolean, Unit::none, "false", {}},
      {"noise.x_amplitude", Kind::real, Unit::hertz, "6 Hz", {}},
      {"noise.omega0", Kind::real, Unit::hertz, "4.11e14 Hz", {}},
      {"schedule.T_total", Kind::real, Unit::time, "100 1/J", {}},
      {"schedule.shape", Kind::choice, Unit::none, "linear",
       {"linear", "smoothstep"}},
      {"schedule.J_start", Kind::real, Unit::energy, "0 J", {}},
      {"schedule.h_start", Kind::real, Unit::energy, "-10 J", {}},
      {"schedule.J_end", Kind::real, Unit::energy, "1 J", {}},
      {"schedule.h_end", Kind::real, Unit::energy, "0 J", {}},
      {"schedule.dt", Kind::real, Unit::time, "0 1/J", {}},
      {"run.seed", Kind::integer, Unit::none, "0", {}},
      {"run.samples", Kind::integer, Unit::none, "2001", {}},
      {"run.t_max", Kind::real, Unit::time, "2000 1/J", {}},
      {"run.N_list", Kind::int_list, Unit::none, "3, 4, 5, 6, 7, 8", {}},
      {"run.variant", Kind::choice, Unit::none, "both",
       {"both", "ideal", "perturbed"}},
      {"run.K", Kind::integer, Unit::none, "2", {}},
      {"run.input", Kind::choice, Unit::none, "bell",
       {"bell", "product", "zero", "one", "custom"}},
      {"run.coeffs", Kind::real_list, Unit::none, "", {}},
      {"run.interface_noise", Kind::boolean, Unit::none, "false", {}},
      {"run.J_hz", Kind::real, Unit::rad_per_s, "0 rad/s", {}},
  };
  return specs;
}

const KeySpec& spec_for(std::string_view key) {
  for (const auto& s : schema())
    if (s.key == key) return s;
  throw ConfigError("unknown configuration key '" + std::string(key) + "'");
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i)
    if (i == s.size() || s[i] == sep) {
      parts.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  return parts;
}

double parse_double(std::string_view key, std::string_view tok) {
  double v = 0.0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
    throw ConfigError(std::string(key) + ": '" + std::string(tok) +
                      "' is not a number");
  return v;
}

std::int64_t parse_int(std::string_view key, std::string_view tok) {
  std::int64_t v = 0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
    throw ConfigError(std::string(key) + ": '" + std::string(tok) +
                      "' is not an integer");
  return v;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

RunConfig::Value parse_value(const KeySpec& spec, std::string_view raw) {
  raw = trim(raw);
  std::string_view body = raw;
  if (spec.unit != Unit::none) {
    const auto space = raw.find_last_of(" \t");
    if (space == std::string_view::npos)
      throw ConfigError(std::string(spec.key) + ": missing unit, expected '" +
                        std::string(unit_token(spec.unit)) + "'");
    const auto unit = trim(raw.substr(space + 1));
    if (unit != unit_token(spec.unit))
      throw ConfigError(std::string(spec.key) + ": unit '" + std::string(unit) +
                        "' does not match expected '" +
                        std::string(unit_token(spec.unit)) + "'");
    body = trim(raw.substr(0, space));
  }
  switch (spec.kind) {
    case Kind::boolean:
      if (body == "true" || body == "1") return true;
      if (body == "false" || body == "0") return false;
      throw ConfigError(std::string(spec.key) + ": expected true or false");
    case Kind::integer: {
      if (body.find_first_of(" \t") != std::string_view::npos)
        throw ConfigError(std::string(spec.key) + ": dimensionless key takes "
                          "no unit");
      return parse_int(spec.key, body);
    }
    case Kind::real: {
      if (body.find_first_of(" \t") != std::string_view::npos)
        throw ConfigError(std::string(spec.key) +
                          (spec.unit == Unit::none
                               ? ": dimensionless key takes no unit"
                               : ": malformed value"));
      const double v = parse_double(spec.key, body);
      if (!std::isfinite(v))
        throw ConfigError(std::string(spec.key) + ": value must be finite");
      return v;
    }
    case Kind::choice:
      if (std::find(spec.choices.begin(), spec.choices.end(), body) ==
          spec.choices.end())
        throw ConfigError(std::string(spec.key) + ": '" + std::string(body) +
                          "' is not an allowed value");
      return std::string(body);
    case Kind::int_list: {
      std::vector<std::int64_t> out;
      if (!body.empty())
        for (auto tok : split(body, ',')) out.push_back(parse_int(spec.key, tok));
      return out;
    }
    case Kind::real_list: {
      std::vector<double> out;
      if (!body.empty())
        for (auto tok : split(body, ','))
          out.push_back(parse_double(spec.key, tok));
      return out;
    }
  }
  throw ConfigError("unreachable");
}

std::string render(const KeySpec& spec, const RunConfig::Value& v) {
  std::string body;
  switch (spec.kind) {
    case Kind::boolean: body = std::get<bool>(v) ? "true" : "false"; break;
    case Kind::integer: body = std::to_string(std::get<std::int64_t>(v)); break;
    case Kind::real: body = format_double(std::get<double>(v)); break;
    case Kind::choice: body = std::get<std::string>(v); break;
    case Kind::int_list:
      for (auto x : std::get<std::vector<std::int64_t>>(v))
        body += (body.empty() ? "" : ", ") + std::to_string(x);
      break;
    case Kind::real_list:
      for (auto x : std::get<std::vector<double>>(v))
        body += (body.empty() ? "" : ", ") + format_double(x);
      break;
  }
  if (spec.unit != Unit::none) body += " " + std::string(unit_token(spec.unit));
  return body;
}

template <class T>
const T& typed(const std::map<std::string, RunConfig::Value, std::less<>>& m,
               std::string_view key) {
  const auto it = m.find(key);
  if (it == m.end())
    throw ConfigError("unknown configuration key '" + std::string(key) + "'");
  if (const T* p = std::get_if<T>(&it->second)) return *p;
  throw ConfigError("configuration key '" + std::string(key) +
                    "' has a different type");
}

}  // namespace

std::string_view unit_token(Unit u) {
  switch (u) {
    case Unit::none: return "";
    case Unit::energy: return "J";
    case Unit::time: return "1/J";
    case Unit::hertz: return "Hz";
    case Unit::rad_per_s: return "rad/s";
  }
  return "";
}

RunConfig RunConfig::defaults() {
  RunConfig c;
  for (const auto& s : schema())
    c.values_.emplace(std::string(s.key), parse_value(s, s.default_raw));
  return c;
}

void RunConfig::set(std::string_view key, std::string_view raw) {
  const KeySpec& spec = spec_for(trim(key));
  values_[std::string(spec.key)] = parse_value(spec, raw);
}

RunConfig RunConfig::parse(std::string_view text) {
  RunConfig c = defaults();
  int line_no = 0;
  for (auto line : split(text, '\n')) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line_no) +
                        ": expected 'key = value'");
    c.set(trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  return c;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open configuration file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

RunConfig RunConfig::from_metadata(std::string_view csv_text) {
  constexpr std::string_view prefix = "# config: ";
  std::string assignments;
  for (auto line : split(csv_text, '\n'))
    if (line.substr(0, prefix.size()) == prefix)
      assignments += std::string(line.substr(prefix.size())) + "\n";
  return parse(assignments);
}

bool RunConfig::get_bool(std::string_view key) const {
  return typed<bool>(values_, key);
}
std::int64_t RunConfig::get_int(std::string_view key) const {
  return typed<std::int64_t>(values_, key);
}
double RunConfig::get_real(std::string_view key) const {
  return typed<double>(values_, key);
}
const std::string& RunConfig::get_string(std::string_view key) const {
  return typed<std::string>(values_, key);
}
const std::vector<std::int64_t>& RunConfig::get_int_list(
    std::string_view key) const {
  return typed<std::vector<std::int64_t>>(values_, key);
}
const std::vector<double>& RunConfig::get_real_list(std::string_view key) const {
  return typed<std::vector<double>>(values_, key);
}

std::vector<std::string> RunConfig::echo() const {
  std::vector<std::string> lines;
  for (const auto& [key, value] : values_)
  {
    const std::string body = render(spec_for(key), value);
    lines.push_back(key + (body.empty() ? " =" : " = " + body));
  }
  return lines;
}

void RunConfig::validate() const {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  const auto n = get_int("model.N");
  if (n < 2 || n > kMaxDenseSites)
    fail("model.N = " + std::to_string(n) + " outside [2, " +
         std::to_string(kMaxDenseSites) + "]");
  const auto& n_list = get_int_list("run.N_list");
  if (n_list.empty()) fail("run.N_list is empty");
  for (auto v : n_list)
    if (v < 2 || v > kMaxDenseSites)
      fail("run.N_list entry " + std::to_string(v) + " outside [2, " +
           std::to_string(kMaxDenseSites) + "]");
  const auto k = get_int("run.K");
  if (k < 1) fail("run.K must be >= 1");
  if (k * n > kMaxDenseSites)
    fail("run.K * model.N = " + std::to_string(k * n) + " exceeds " +
         std::to_string(kMaxDenseSites));
  if (get_int("run.samples") < 2) fail("run.samples must be >= 2");
  if (get_int("run.seed") < 0) fail("run.seed must be non-negative");
  if (get_real("schedule.T_total") < 0) fail("schedule.T_total must be >= 0");
  if (get_real("schedule.dt") < 0) fail("schedule.dt must be >= 0");
  if (get_real("run.t_max") < 0) fail("run.t_max must be >= 0");
  if (get_real("noise.x_amplitude") < 0) fail("noise.x_amplitude must be >= 0");
  if (get_real("noise.omega0") <= 0) fail("noise.omega0 must be > 0");
  if (get_real("run.J_hz") < 0) fail("run.J_hz must be >= 0");
  if (get_string("run.input") == "custom" &&
      get_real_list("run.coeffs").size() != (std::size_t{1} << k))
    fail("run.coeffs needs 2^K entries for a custom input");
}

}  // namespace majorana
