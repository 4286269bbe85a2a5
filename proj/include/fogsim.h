/* C interface to the fogsim simulation core.
 *
 * All entry points return a status code; FOGSIM_OK means success. On
 * failure, fogsim_last_error() returns a thread-local message describing
 * what went wrong. Objects are opaque handles owned by the caller and
 * released with the matching *_free function.
 */
#ifndef FOGSIM_H
#define FOGSIM_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct fogsim_scenario fogsim_scenario;
typedef struct fogsim_report fogsim_report;

/* Status codes double as CLI exit codes. */
enum {
    FOGSIM_OK = 0,
    FOGSIM_ERR_RUNTIME = 1,    /* fault while the simulation was running */
    FOGSIM_ERR_USAGE = 2,      /* bad arguments, unreadable files */
    FOGSIM_ERR_VALIDATION = 3  /* malformed or inconsistent scenario content */
};

const char* fogsim_version(void);

/* Comma-separated lists, for help texts and diagnostics. */
const char* fogsim_builtin_names(void);
const char* fogsim_policy_names(void);

/* Thread-local message for the most recent failure in this thread. */
const char* fogsim_last_error(void);

/* Loads a scenario document from disk. Overrides applied afterwards take
 * effect when the run starts. */
int fogsim_scenario_from_file(const char* path, fogsim_scenario** out);

/* Selects a builtin scenario by name, generated from the given seed. */
int fogsim_scenario_builtin(const char* name, uint64_t seed, fogsim_scenario** out);

int fogsim_scenario_set_seed(fogsim_scenario* scenario, uint64_t seed);
int fogsim_scenario_set_horizon(fogsim_scenario* scenario, double horizon_ms);
int fogsim_scenario_set_policy(fogsim_scenario* scenario, const char* policy);

/* Runs the scenario. When event_log_path is non-NULL the line-delimited
 * event log is written there. The scenario handle stays reusable: each
 * run is independent and deterministic for the same configuration. */
int fogsim_run(const fogsim_scenario* scenario, const char* event_log_path, fogsim_report** out);

/* Renders a report as "human", "machine" (JSON) or "csv". The returned
 * string is owned by the caller; release it with fogsim_string_free. */
int fogsim_report_render(const fogsim_report* report, const char* format, char** out_text);

void fogsim_string_free(char* text);
void fogsim_scenario_free(fogsim_scenario* scenario);
void fogsim_report_free(fogsim_report* report);

#ifdef __cplusplus
}
#endif

#endif /* FOGSIM_H */
