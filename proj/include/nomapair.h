#ifndef NOMAPAIR_H
#define NOMAPAIR_H

/* C interface to the pairing toolkit. Handles are opaque; every entry point
 * returns a status code, and np_last_error() describes the most recent
 * failure on the calling thread. */

#include <stddef.h>

#if defined(_WIN32)
#define NP_API __declspec(dllexport)
#elif defined(__GNUC__)
#define NP_API __attribute__((visibility("default")))
#else
#define NP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum np_status {
  NP_OK = 0,
  NP_ERROR_CONFIG = 2,  /* bad config file, key, value, or argument */
  NP_ERROR_NUMERIC = 3, /* a computation left its validated domain */
  NP_ERROR_IO = 4       /* file could not be read or written */
} np_status;

typedef struct np_experiment np_experiment;

NP_API const char* np_version(void);
NP_API const char* np_rng_algorithm(void);
/* Message for the last failing call on this thread; empty string if none. */
NP_API const char* np_last_error(void);

NP_API np_status np_experiment_from_file(const char* path, np_experiment** out);
NP_API np_status np_experiment_from_preset(const char* name, np_experiment** out);
/* Same keys as the config file format, e.g. ("trials", "200"). */
NP_API np_status np_experiment_override(np_experiment* exp, const char* key, const char* value);
NP_API np_status np_experiment_run(np_experiment* exp);
/* NULL path falls back to the config's `out` key, then stdout. */
NP_API np_status np_experiment_write_csv(np_experiment* exp, const char* path);
NP_API np_status np_experiment_row_count(const np_experiment* exp, size_t* count);
NP_API np_status np_experiment_row(const np_experiment* exp, size_t index, double* sweep_value,
                                   char* method, size_t method_cap, char* power_mode,
                                   size_t power_mode_cap, double* mean_metric,
                                   double* stderr_metric, long* trials);
NP_API void np_experiment_free(np_experiment* exp);

/* table: "theorem3" or "theorem6". overrides: config lines ("gamma_db = 10"),
 * newline separated, may be NULL. NULL out_path writes to stdout. */
NP_API np_status np_analytic_table(const char* table, const char* overrides, const char* out_path);

/* Samples the cell described by a scenario config file and writes the
 * user,r,d,P,gamma table. NULL out_path writes to stdout. */
NP_API np_status np_scenario_csv(const char* config_path, const char* out_path);

#ifdef __cplusplus
}
#endif

#endif /* NOMAPAIR_H */
