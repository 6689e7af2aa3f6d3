/* C interface of the descent engine. All objects are opaque handles owned by
 * the caller and released with the matching *_free function. Functions
 * return an snc_status; the numeric values double as process exit codes. */
#ifndef SNCDESCENT_H
#define SNCDESCENT_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define SNC_API __declspec(dllexport)
#else
#define SNC_API __attribute__((visibility("default")))
#endif

typedef enum snc_status {
  SNC_OK = 0,
  SNC_VERIFICATION_FAILED = 1,
  SNC_INPUT_ERROR = 2,
  SNC_PRECISION_EXHAUSTED = 3,
  SNC_INTERNAL = 4,
  SNC_INVALID_ARGUMENT = 5
} snc_status;

typedef struct snc_config snc_config;
typedef struct snc_result snc_result;
typedef struct snc_ring snc_ring;
typedef struct snc_module snc_module;

SNC_API const char* snc_version(void);
SNC_API const char* snc_status_name(snc_status status);

/* Run configuration. Keys: "field", "prec", "prec-cap", "deg", "seed",
 * "format" ("text" or "json"). */
SNC_API snc_config* snc_config_new(void);
SNC_API void snc_config_free(snc_config* cfg);
SNC_API snc_status snc_config_set(snc_config* cfg, const char* key, const char* value);

/* Each run stores its report in *out, also on failure; the return value is
 * the run's status. */
SNC_API snc_status snc_run_file(const snc_config* cfg, const char* path, snc_result** out);
SNC_API snc_status snc_run_text(const snc_config* cfg, const char* text, snc_result** out);
SNC_API snc_status snc_run_demo(const snc_config* cfg, const char* name, snc_result** out);
SNC_API snc_status snc_run_strata(const snc_config* cfg, int n, snc_result** out);
SNC_API snc_status snc_run_bl(const snc_config* cfg, const char* vars, const char* f, snc_result** out);
SNC_API snc_status snc_reformat_report(const char* json, snc_result** out);

SNC_API const char* snc_result_output(const snc_result* r);
SNC_API const char* snc_result_error(const snc_result* r);
SNC_API snc_status snc_result_status(const snc_result* r);
SNC_API void snc_result_free(snc_result* r);

/* Polynomial rings and modules. Variables are comma separated; relations
 * are columns separated by ';' with entries separated by ','. */
SNC_API snc_status snc_ring_new(const char* vars, const char* field, snc_ring** out);
SNC_API void snc_ring_free(snc_ring* r);
SNC_API snc_status snc_module_new(const snc_ring* ring, size_t gens, const char* relations, snc_module** out);
SNC_API void snc_module_free(snc_module* m);
/* Writes a NUL-terminated description; *needed receives the full length. */
SNC_API snc_status snc_module_describe(const snc_module* m, char* buf, size_t len, size_t* needed);
/* Glues the module's own descent datum along the given divisor components
 * and reports whether the result is isomorphic to the module. */
SNC_API snc_status snc_module_roundtrip(const snc_module* m, const char* divisor, int level, int cap, int* iso);

#ifdef __cplusplus
}
#endif

#endif
