#ifndef EXDYN_EXDYN_H
#define EXDYN_EXDYN_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define EXDYN_API __declspec(dllexport)
#else
#define EXDYN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum exdyn_status {
  EXDYN_OK = 0,
  EXDYN_ERR_INVALID_ARGUMENT = 1,
  EXDYN_ERR_PARAMETER = 2,
  EXDYN_ERR_CAPACITY = 3,
  EXDYN_ERR_CONDITIONING = 4,
  EXDYN_ERR_SHAPE = 5,
  EXDYN_ERR_MODEL = 6,
  EXDYN_ERR_DESCRIPTOR = 7,
  EXDYN_ERR_MULTIPLICITY = 8,
  EXDYN_ERR_CONFIG = 9,
  EXDYN_ERR_IO = 10,
  EXDYN_ERR_BUFFER_TOO_SMALL = 11,
  EXDYN_ERR_INTERNAL = 12
} exdyn_status;

typedef struct exdyn_config exdyn_config;
typedef struct exdyn_run_result exdyn_run_result;
typedef struct exdyn_model exdyn_model;
typedef struct exdyn_operator exdyn_operator;
typedef struct exdyn_report exdyn_report;

/* Message of the last failed call on this thread ("" if none). */
EXDYN_API const char* exdyn_last_error(void);
EXDYN_API const char* exdyn_version(void);

/* Run configuration (key = value text). */
EXDYN_API exdyn_status exdyn_config_parse(const char* text, exdyn_config** out);
EXDYN_API exdyn_status exdyn_config_load(const char* path, exdyn_config** out);
EXDYN_API exdyn_status exdyn_config_set_seed(exdyn_config* config, uint64_t seed);
/* "exact" or "float". */
EXDYN_API exdyn_status exdyn_config_set_arithmetic(exdyn_config* config, const char* mode);
EXDYN_API void exdyn_config_free(exdyn_config* config);

/* Runs the configured command, writing artifacts to out_dir (NULL: the
   config's output key). jobs <= 0 means 1. */
EXDYN_API exdyn_status exdyn_execute(const exdyn_config* config, const char* out_dir, int jobs,
                                     exdyn_run_result** out);
EXDYN_API int exdyn_run_result_exit_code(const exdyn_run_result* result);
EXDYN_API const char* exdyn_run_result_summary(const exdyn_run_result* result);
EXDYN_API void exdyn_run_result_free(exdyn_run_result* result);

/* Models and exact operators. */
EXDYN_API exdyn_status exdyn_model_parse(const char* text, exdyn_model** out);
EXDYN_API void exdyn_model_free(exdyn_model* model);

EXDYN_API exdyn_status exdyn_transition_operator(const exdyn_model* model, long nmax, exdyn_operator** out);
EXDYN_API exdyn_status exdyn_operator_block_size(const exdyn_operator* op, long sector, size_t* rows, size_t* cols);
/* Entry as "p/q" text. If buf is too small, *needed receives the required
   size (including the terminator) and EXDYN_ERR_BUFFER_TOO_SMALL is returned. */
EXDYN_API exdyn_status exdyn_operator_entry(const exdyn_operator* op, long sector, size_t row, size_t col, char* buf,
                                            size_t buflen, size_t* needed);
EXDYN_API void exdyn_operator_free(exdyn_operator* op);

/* Self-duality of the model's transition operator with its closed-form
   duality function, exact, totals <= nmax. */
EXDYN_API exdyn_status exdyn_check_self_duality(const exdyn_model* model, long nmax, exdyn_report** out);
EXDYN_API int exdyn_report_passed(const exdyn_report* report);
EXDYN_API const char* exdyn_report_json(const exdyn_report* report);
EXDYN_API void exdyn_report_free(exdyn_report* report);

#ifdef __cplusplus
}
#endif

#endif
