/* C interface to the plateau shared library: opaque handles, status codes,
 * JSON reports. All functions are thread-compatible; the error message is
 * thread-local. */
#ifndef PLATEAU_H
#define PLATEAU_H

#include <stdint.h>

#ifndef PLATEAU_API
#if defined(_WIN32)
#define PLATEAU_API __declspec(dllexport)
#else
#define PLATEAU_API __attribute__((visibility("default")))
#endif
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct plateau_curve plateau_curve;
typedef struct plateau_result plateau_result;

typedef enum plateau_status {
    PLATEAU_OK = 0,
    PLATEAU_ERR_INPUT = 1,
    PLATEAU_ERR_NOT_CONVERGED = 2,
    PLATEAU_ERR_RESOLUTION = 3,
    PLATEAU_ERR_INTERNAL = 4
} plateau_status;

typedef struct plateau_config {
    int depth;            /* refinement depth, default 5 */
    int max_outer_iters;  /* default 200 */
    double rel_tol;       /* default 1e-6 */
    uint64_t seed;        /* default 0 */
    int seam_samples;     /* collar seam resolution, default 256 */
    int metric_trials;    /* axiom sampling trials, default 10000 */
} plateau_config;

PLATEAU_API void plateau_config_init(plateau_config* cfg);

/* Message for the most recent failing call on this thread. */
PLATEAU_API const char* plateau_last_error(void);

PLATEAU_API const char* plateau_version(void);

/* --- curves ------------------------------------------------------------ */

PLATEAU_API plateau_status plateau_curve_load(const char* path,
                                              plateau_curve** out);
PLATEAU_API plateau_status plateau_curve_parse(const char* json_text,
                                               plateau_curve** out);
/* Bundled curves: circle, ellipse, double-circle, figure-eight,
 * trefoil-projection, space-curve. */
PLATEAU_API plateau_status plateau_curve_corpus(const char* name,
                                                plateau_curve** out);
PLATEAU_API void plateau_curve_free(plateau_curve* curve);

PLATEAU_API int plateau_curve_dimension(const plateau_curve* curve);
PLATEAU_API int plateau_curve_point_count(const plateau_curve* curve);
PLATEAU_API double plateau_curve_length(const plateau_curve* curve);
PLATEAU_API int plateau_curve_is_constant_speed(const plateau_curve* curve);
PLATEAU_API int plateau_curve_self_intersection_sites(const plateau_curve* curve);
PLATEAU_API plateau_status plateau_curve_resample(const plateau_curve* curve,
                                                  int point_count,
                                                  plateau_curve** out);
/* Curve JSON; release with plateau_string_free. */
PLATEAU_API plateau_status plateau_curve_to_json(const plateau_curve* curve,
                                                 char** out_text);
PLATEAU_API void plateau_string_free(char* text);

/* --- runs --------------------------------------------------------------- */

/* Area-minimizing disc. Succeeds (PLATEAU_OK) even when the iteration hits
 * the budget; query plateau_result_passed for convergence. */
PLATEAU_API plateau_status plateau_solve(const plateau_curve* curve,
                                         const plateau_config* cfg,
                                         plateau_result** out);

/* Collar metric suite: axiom sampling, retraction bound, top-curve
 * chord-arc constant. */
PLATEAU_API plateau_status plateau_collar_check(const plateau_curve* curve,
                                                const plateau_config* cfg,
                                                plateau_result** out);

/* Full verification suite (solve + area ledger + isoperimetric bounds +
 * parametrized round trip + collar metric suite). */
PLATEAU_API plateau_status plateau_verify(const plateau_curve* curve,
                                          const plateau_config* cfg,
                                          plateau_result** out);

/* --- results ------------------------------------------------------------ */

/* Owned by the result; valid until plateau_result_free. */
PLATEAU_API const char* plateau_result_report_json(const plateau_result* result);
/* solve: converged; collar-check/verify: all checks passed. */
PLATEAU_API int plateau_result_passed(const plateau_result* result);
/* Disc area for solve results; NaN otherwise. */
PLATEAU_API double plateau_result_area(const plateau_result* result);
/* Solve results only: OBJ for dimension <= 3, JSON mesh otherwise. */
PLATEAU_API plateau_status plateau_result_write_mesh(const plateau_result* result,
                                                     const char* path);
PLATEAU_API void plateau_result_free(plateau_result* result);

#ifdef __cplusplus
}
#endif

#endif /* PLATEAU_H */
