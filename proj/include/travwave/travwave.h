/* C interface to the travwave library. All handles are opaque; every call
 * that can fail returns a tw_status and leaves a message for tw_last_error(). */
#ifndef TRAVWAVE_TRAVWAVE_H
#define TRAVWAVE_TRAVWAVE_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(TRAVWAVE_BUILDING_LIBRARY)
#    define TW_API __declspec(dllexport)
#  else
#    define TW_API __declspec(dllimport)
#  endif
#else
#  define TW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tw_status {
  TW_OK = 0,
  TW_ERR_INVALID_ARGUMENT = 1,
  TW_ERR_NO_CONVERGENCE = 2,
  TW_ERR_SINGULAR_JACOBIAN = 3,
  TW_ERR_BRANCH_TERMINATED = 4,
  TW_ERR_RESONANT_MODE = 5,
  TW_ERR_BLOW_UP = 6,
  TW_ERR_INSUFFICIENT_DATA = 7,
  TW_ERR_NO_EXACT_SOLUTION = 8,
  TW_ERR_CONFIG = 9,
  TW_ERR_IO = 10,
  TW_ERR_INTERNAL = 99
} tw_status;

typedef enum tw_boundary {
  TW_BC_MEAN_ZERO = 0,
  TW_BC_HOMOGENEOUS = 1,
  TW_BC_SOLITARY = 2,
  TW_BC_CONST_LEVEL = 3
} tw_boundary;

typedef struct tw_equation tw_equation;
typedef struct tw_branch tw_branch;

typedef struct tw_navigation_options {
  double step;
  int max_halvings;
  double initial_height;
  int corrected_guess; /* 0: first-order Stokes guess, 1: corrected */
  double newton_tol;
  int newton_max_iters;
} tw_navigation_options;

typedef struct tw_point_info {
  double speed;
  double height;
  double b;
  double theta;
  double residual_norm;
  int newton_iters;
} tw_point_info;

TW_API const char* tw_version(void);
/* Message of the last failed call on this thread ("" if none). */
TW_API const char* tw_last_error(void);

/* name: kdv, gkdv, whitham, benjamin-ono, mbo, benjamin. tau is used by
 * benjamin, exponent by gkdv. */
TW_API tw_status tw_equation_create(const char* name, double length, double tau, int exponent, tw_equation** out);
TW_API void tw_equation_destroy(tw_equation* eq);
TW_API tw_status tw_equation_symbol(const tw_equation* eq, double k, double* out);
TW_API tw_status tw_equation_flux(const tw_equation* eq, const double* u, size_t n, double* out);
TW_API tw_status tw_bifurcation_speed(const tw_equation* eq, double* out);

TW_API void tw_navigation_options_default(tw_navigation_options* opts);

/* Bootstraps and continues a branch for up to max_steps steps. max_height <= 0
 * means no height target. A branch that ends early is still returned. */
TW_API tw_status tw_branch_compute(const tw_equation* eq, size_t grid_size, tw_boundary bc, double level,
                                   const tw_navigation_options* opts, int max_steps, double max_height, tw_branch** out);
TW_API void tw_branch_destroy(tw_branch* branch);
TW_API size_t tw_branch_size(const tw_branch* branch);
TW_API size_t tw_branch_grid_size(const tw_branch* branch);
/* Termination reason, e.g. "max-steps" or "no-convergence". */
TW_API const char* tw_branch_termination(const tw_branch* branch);
TW_API tw_status tw_branch_point(const tw_branch* branch, size_t index, tw_point_info* out);
/* Copies the grid_size profile samples of point `index` into `samples`. */
TW_API tw_status tw_branch_profile(const tw_branch* branch, size_t index, double* samples, size_t capacity);
/* Finest stage of a refinement with `doublings` grid doublings. */
TW_API tw_status tw_branch_refine(const tw_branch* branch, const tw_equation* eq, int doublings, tw_branch** out);

/* Runs one CLI subcommand (branch, refine, evolve, converge, analyze).
 * config_path, out_dir and guess may be NULL. The process exit code
 * (0 ok, 1 config or I/O error, 2 numerical event) goes to *exit_code;
 * diagnostics are written to stderr. */
TW_API tw_status tw_run_command(const char* command, const char* config_path, const char* out_dir, const char* guess,
                                const char* const* overrides, size_t n_overrides, int* exit_code);

#ifdef __cplusplus
}
#endif

#endif
