#ifndef MAJORANA_MAJORANA_H
#define MAJORANA_MAJORANA_H

/* C interface to the Majorana-chain simulator. Every function returns a
 * status code; on failure mjr_last_error() describes the problem for the
 * calling thread. Strings returned by the library are owned by the object
 * they came from and stay valid until it is freed. */

#include <stddef.h>

#if defined(MJR_BUILDING_LIBRARY)
#define MJR_API __attribute__((visibility("default")))
#else
#define MJR_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mjr_status {
  MJR_OK = 0,
  MJR_ERR_USAGE = 1,     /* bad argument or unknown experiment */
  MJR_ERR_CONFIG = 2,    /* unparsable key, value or unit */
  MJR_ERR_DOMAIN = 3,    /* parameters outside a formula's domain */
  MJR_ERR_BUDGET = 4,    /* system too large for dense simulation */
  MJR_ERR_NUMERICAL = 5, /* solver or integrator failure */
  MJR_ERR_INTERNAL = 6
} mjr_status;

typedef struct mjr_config mjr_config;
typedef struct mjr_report mjr_report;

/* mjr_run flags */
#define MJR_FLAG_INJECT_JW_FAULT 1u

MJR_API const char* mjr_version(void);
MJR_API const char* mjr_last_error(void);

/* Configuration: flat `section.key = value [unit]` assignments. */
MJR_API mjr_status mjr_config_new(mjr_config** out);
/* Replace the configuration by defaults overridden from a file or string. */
MJR_API mjr_status mjr_config_load_file(mjr_config* cfg, const char* path);
MJR_API mjr_status mjr_config_load_string(mjr_config* cfg, const char* text);
MJR_API mjr_status mjr_config_set(mjr_config* cfg, const char* key,
                                  const char* value);
/* Writes the canonical `value [unit]` text; fails with MJR_ERR_USAGE when
 * `size` is too small. */
MJR_API mjr_status mjr_config_get(const mjr_config* cfg, const char* key,
                                  char* buffer, size_t size);
MJR_API mjr_status mjr_config_validate(const mjr_config* cfg);
MJR_API void mjr_config_free(mjr_config* cfg);

/* Runs check, sweep, splitting, survival, interface or estimate. */
MJR_API mjr_status mjr_run(const mjr_config* cfg, const char* experiment,
                           unsigned flags, mjr_report** out);
MJR_API size_t mjr_report_file_count(const mjr_report* r);
/* File tag ("" for single-file experiments, else e.g. "ideal"); NULL when
 * out of range. */
MJR_API const char* mjr_report_file_suffix(const mjr_report* r, size_t i);
MJR_API const char* mjr_report_file_contents(const mjr_report* r, size_t i);
MJR_API const char* mjr_report_text(const mjr_report* r);
/* 0 when a self-check invariant failed, 1 otherwise. */
MJR_API int mjr_report_passed(const mjr_report* r);
MJR_API void mjr_report_free(mjr_report* r);

/* Closed-form and small exact results, energies in units of J. */
MJR_API mjr_status mjr_offresonant_excitation(double amplitude, double omega0,
                                              double* probability);
MJR_API mjr_status mjr_effective_error_frequency(double delta_hz, double j,
                                                 double* frequency);
/* n0 is +inf when a root lies on the unit circle. */
MJR_API mjr_status mjr_localization_length(double w, double delta_abs,
                                           double mu, double* n0);
/* Exact ground splitting and gap of an N-site chain with homogeneous stray
 * field, J_12 = j12_ratio and J_13 = j13_over_j12 * J_12. */
MJR_API mjr_status mjr_ground_splitting(int n_sites, double delta_hz,
                                        double j12_ratio, double j13_over_j12,
                                        double* gamma, double* gap);

#ifdef __cplusplus
}
#endif

#endif /* MAJORANA_MAJORANA_H */
