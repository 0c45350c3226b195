#pragma once

// Experiment drivers behind the command-line subcommands. Each returns its
// CSV files and/or a text report; nothing here touches the filesystem.

#include "majorana/config.hpp"
#include "majorana/dynamics.hpp"
#include "majorana/model.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace majorana {

enum class Fault { none, jw_sign };

struct OutputFile {
  std::string suffix;    ///< empty for single-file experiments
  std::string contents;
};

struct ExperimentResult {
  std::vector<OutputFile> files;
  std::string text;
  bool passed = true;    ///< false only when a self-check invariant fails
};

Schedule schedule_from(const RunConfig& config);
/// Stray fields, J_12 error and (when `with_nnn`) J_13 from the noise and
/// model keys.
Imperfections imperfections_from(const RunConfig& config, bool with_nnn);
/// Logical input coefficients for run.input with 2^K entries.
std::vector<Complex> memory_input(const RunConfig& config);

ExperimentResult run_check(const RunConfig& config, Fault fault = Fault::none);
/// Ground-branch transfer of the ideal and/or perturbed chain.
ExperimentResult run_sweep(const RunConfig& config);
ExperimentResult run_splitting(const RunConfig& config);
ExperimentResult run_survival(const RunConfig& config);
ExperimentResult run_interface(const RunConfig& config);
ExperimentResult run_estimate(const RunConfig& config);

/// Dispatch by subcommand name; validates the configuration first.
/// Throws UsageError for an unknown name.
ExperimentResult run_experiment(std::string_view name, const RunConfig& config,
                                Fault fault = Fault::none);

}  // namespace majorana
