#include "majorana/majorana.h"

#include "majorana/config.hpp"
#include "majorana/dynamics.hpp"
#include "majorana/error.hpp"
#include "majorana/experiments.hpp"
#include "majorana/report.hpp"
#include "majorana/spectral.hpp"

#include <cstring>
#include <string>

struct mjr_config {
  majorana::RunConfig value = majorana::RunConfig::defaults();
};

struct mjr_report {
  majorana::ExperimentResult value;
};

namespace {

thread_local std::string last_error;
const std::string version(majorana::kToolVersion);

template <class F>
mjr_status guarded(F&& f) {
  try {
    last_error.clear();
    f();
    return MJR_OK;
  } catch (const majorana::ConfigError& e) {
    last_error = e.what();
    return MJR_ERR_CONFIG;
  } catch (const majorana::UsageError& e) {
    last_error = e.what();
    return MJR_ERR_USAGE;
  } catch (const majorana::DomainError& e) {
    last_error = e.what();
    return MJR_ERR_DOMAIN;
  } catch (const majorana::BudgetError& e) {
    last_error = e.what();
    return MJR_ERR_BUDGET;
  } catch (const majorana::NumericalError& e) {
    last_error = e.what();
    return MJR_ERR_NUMERICAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return MJR_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return MJR_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw majorana::UsageError(std::string(what) + " is null");
}

const majorana::OutputFile* file_at(const mjr_report* r, size_t i) {
  if (!r || i >= r->value.files.size()) return nullptr;
  return &r->value.files[i];
}

}  // namespace

extern "C" {

const char* mjr_version(void) { return version.c_str(); }

const char* mjr_last_error(void) { return last_error.c_str(); }

mjr_status mjr_config_new(mjr_config** out) {
  return guarded([&] {
    require(out, "out");
    *out = new mjr_config;
  });
}

mjr_status mjr_config_load_file(mjr_config* cfg, const char* path) {
  return guarded([&] {
    require(cfg, "config");
    require(path, "path");
    cfg->value = majorana::RunConfig::load(path);
  });
}

mjr_status mjr_config_load_string(mjr_config* cfg, const char* text) {
  return guarded([&] {
    require(cfg, "config");
    require(text, "text");
    cfg->value = majorana::RunConfig::parse(text);
  });
}

mjr_status mjr_config_set(mjr_config* cfg, const char* key, const char* value) {
  return guarded([&] {
    require(cfg, "config");
    require(key, "key");
    require(value, "value");
    cfg->value.set(key, value);
  });
}

mjr_status mjr_config_get(const mjr_config* cfg, const char* key, char* buffer,
                          size_t size) {
  return guarded([&] {
    require(cfg, "config");
    require(key, "key");
    require(buffer, "buffer");
    const std::string prefix = std::string(key) + " = ";
    for (const auto& line : cfg->value.echo())
      if (line.compare(0, prefix.size(), prefix) == 0) {
        const std::string v = line.substr(prefix.size());
        if (v.size() + 1 > size)
          throw majorana::UsageError("buffer too small for '" + prefix + v + "'");
        std::memcpy(buffer, v.c_str(), v.size() + 1);
        return;
      }
    throw majorana::ConfigError("unknown configuration key '" +
                                std::string(key) + "'");
  });
}

mjr_status mjr_config_validate(const mjr_config* cfg) {
  return guarded([&] {
    require(cfg, "config");
    cfg->value.validate();
  });
}

void mjr_config_free(mjr_config* cfg) { delete cfg; }

mjr_status mjr_run(const mjr_config* cfg, const char* experiment,
                   unsigned flags, mjr_report** out) {
  return guarded([&] {
    require(cfg, "config");
    require(experiment, "experiment");
    require(out, "out");
    const auto fault = (flags & MJR_FLAG_INJECT_JW_FAULT)
                           ? majorana::Fault::jw_sign
                           : majorana::Fault::none;
    auto* r = new mjr_report{
        majorana::run_experiment(experiment, cfg->value, fault)};
    *out = r;
  });
}

size_t mjr_report_file_count(const mjr_report* r) {
  return r ? r->value.files.size() : 0;
}

const char* mjr_report_file_suffix(const mjr_report* r, size_t i) {
  const auto* f = file_at(r, i);
  return f ? f->suffix.c_str() : nullptr;
}

const char* mjr_report_file_contents(const mjr_report* r, size_t i) {
  const auto* f = file_at(r, i);
  return f ? f->contents.c_str() : nullptr;
}

const char* mjr_report_text(const mjr_report* r) {
  return r ? r->value.text.c_str() : nullptr;
}

int mjr_report_passed(const mjr_report* r) {
  return r && r->value.passed ? 1 : 0;
}

void mjr_report_free(mjr_report* r) { delete r; }

mjr_status mjr_offresonant_excitation(double amplitude, double omega0,
                                      double* probability) {
  return guarded([&] {
    require(probability, "probability");
    *probability = majorana::offresonant_excitation(amplitude, omega0).probability;
  });
}

mjr_status mjr_effective_error_frequency(double delta_hz, double j,
                                         double* frequency) {
  return guarded([&] {
    require(frequency, "frequency");
    *frequency = majorana::effective_error_frequency(delta_hz, j);
  });
}

mjr_status mjr_localization_length(double w, double delta_abs, double mu,
                                   double* n0) {
  return guarded([&] {
    require(n0, "n0");
    *n0 = majorana::analytic_localization(w, delta_abs, mu).n0;
  });
}

mjr_status mjr_ground_splitting(int n_sites, double delta_hz, double j12_ratio,
                                double j13_over_j12, double* gamma,
                                double* gap) {
  return guarded([&] {
    require(gamma, "gamma");
    require(gap, "gap");
    majorana::Imperfections noise;
    noise.delta_hz = delta_hz;
    noise.j12_ratio = j12_ratio;
    noise.j13_over_j12 = j13_over_j12;
    const auto rows = majorana::splitting_scan(noise, {n_sites});
    *gamma = rows.front().gamma;
    *gap = rows.front().gap;
  });
}

}  // extern "C"
