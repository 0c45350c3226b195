// majorana: command-line front end over the C interface.
//
//   majorana check|sweep|splitting|survival|interface|estimate [options]
//
// Exit status: 0 success, 1 self-check or numerical failure, 2 usage or
// configuration error.

#include "majorana/majorana.h"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Options {
  std::string config_path;
  std::optional<std::string> seed;
  std::string out;
  std::optional<std::string> include_nnn;
  std::optional<std::string> random_sign_noise;
  std::string fault;
};

int exit_code(mjr_status s) {
  switch (s) {
    case MJR_OK: return kExitOk;
    case MJR_ERR_NUMERICAL:
    case MJR_ERR_INTERNAL: return kExitFailure;
    default: return kExitUsage;
  }
}

int report_error(mjr_status s) {
  std::fprintf(stderr, "majorana: %s\n", mjr_last_error());
  return exit_code(s);
}

// "run.csv" + "ideal" -> "run_ideal.csv"
std::string output_path(const std::string& base, const std::string& suffix) {
  if (suffix.empty()) return base;
  const auto dot = base.rfind('.');
  const auto slash = base.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return base + "_" + suffix;
  return base.substr(0, dot) + "_" + suffix + base.substr(dot);
}

bool write_file(const std::string& path, const char* contents) {
  if (path == "-") {
    std::fputs(contents, stdout);
    return true;
  }
  std::ofstream out(path, std::ios::binary);
  out << contents;
  return static_cast<bool>(out);
}

int run(const std::string& experiment, const Options& opt) {
  using ConfigPtr = std::unique_ptr<mjr_config, decltype(&mjr_config_free)>;
  using ReportPtr = std::unique_ptr<mjr_report, decltype(&mjr_report_free)>;

  mjr_config* raw_cfg = nullptr;
  if (auto s = mjr_config_new(&raw_cfg); s != MJR_OK) return report_error(s);
  ConfigPtr cfg(raw_cfg, mjr_config_free);

  if (!opt.config_path.empty())
    if (auto s = mjr_config_load_file(cfg.get(), opt.config_path.c_str());
        s != MJR_OK)
      return report_error(s);
  const std::pair<const char*, const std::optional<std::string>*> overrides[] = {
      {"run.seed", &opt.seed},
      {"model.include_nnn", &opt.include_nnn},
      {"noise.random_sign", &opt.random_sign_noise},
  };
  for (const auto& [key, value] : overrides)
    if (value->has_value())
      if (auto s = mjr_config_set(cfg.get(), key, (*value)->c_str()); s != MJR_OK)
        return report_error(s);

  unsigned flags = 0;
  if (opt.fault == "jw-sign") flags |= MJR_FLAG_INJECT_JW_FAULT;

  mjr_report* raw_report = nullptr;
  if (auto s = mjr_run(cfg.get(), experiment.c_str(), flags, &raw_report);
      s != MJR_OK)
    return report_error(s);
  ReportPtr report(raw_report, mjr_report_free);

  std::fputs(mjr_report_text(report.get()), stdout);
  const std::string base = opt.out.empty() ? experiment + ".csv" : opt.out;
  for (size_t i = 0; i < mjr_report_file_count(report.get()); ++i) {
    const std::string path =
        base == "-" ? base
                    : output_path(base, mjr_report_file_suffix(report.get(), i));
    if (!write_file(path, mjr_report_file_contents(report.get(), i))) {
      std::fprintf(stderr, "majorana: cannot write '%s'\n", path.c_str());
      return kExitUsage;
    }
    if (path != "-") std::fprintf(stderr, "wrote %s\n", path.c_str());
  }
  return mjr_report_passed(report.get()) ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Majorana-fermion qubit simulator on an Ising spin chain"};
  app.set_version_flag("--version", std::string(mjr_version()));
  app.require_subcommand(1);

  Options opt;
  app.add_option("--config", opt.config_path, "Configuration file")
      ->check(CLI::ExistingFile);
  app.add_option("--seed", opt.seed, "Random seed (overrides run.seed)");
  app.add_option("--out", opt.out,
                 "Output CSV path, '-' for stdout (default <command>.csv)");
  app.add_option("--include-nnn", opt.include_nnn,
                 "Include the J_13 coupling in the splitting scan (true|false)");
  app.add_option("--random-sign-noise", opt.random_sign_noise,
                 "Random per-site signs of the stray field (true|false)");
  app.add_option("--inject-fault", opt.fault)
      ->check(CLI::IsMember({"jw-sign"}))
      ->group("");

  const std::pair<const char*, const char*> commands[] = {
      {"check", "Run the invariant self-check suite"},
      {"sweep", "Adiabatic ground-state transfer, ideal and perturbed"},
      {"splitting", "Ground-state splitting versus chain length"},
      {"survival", "Encoded-state survival under stray Z fields"},
      {"interface", "Multi-chain quantum-memory transfer"},
      {"estimate", "Closed-form error estimates and noise protection table"},
  };
  for (const auto& [name, help] : commands)
    app.add_subcommand(name, help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  return run(app.get_subcommands().front()->get_name(), opt);
}
