#ifndef ASMOOTH_ASMOOTH_H
#define ASMOOTH_ASMOOTH_H

#include <stddef.h>
#include <stdint.h>

#if defined(ASMOOTH_BUILDING_LIBRARY)
#define ASM_API __attribute__((visibility("default")))
#else
#define ASM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Every fallible call returns a status; on failure a message is available
   from asm_last_error() on the same thread until the next failing call. */
typedef enum asm_status {
  ASM_OK = 0,
  ASM_ERR_USAGE = 1,
  ASM_ERR_IMPOSSIBLE_EVIDENCE = 2,
  ASM_ERR_BOUNDARY = 3,
  ASM_ERR_CONFIGURATION = 4,
  ASM_ERR_SIZE_GUARD = 5,
  ASM_ERR_NUMERICAL = 6,
  ASM_ERR_IO = 7,
  ASM_ERR_PARSE = 8,
  ASM_ERR_INTERNAL = 9
} asm_status;

typedef enum asm_objective {
  ASM_OBJECTIVE_SMOOTHER = 0,
  ASM_OBJECTIVE_BELIEF_SUM = 1,
  ASM_OBJECTIVE_COSTS_ONLY = 2
} asm_objective;

typedef enum asm_prune_mode { ASM_PRUNE_NONE = 0, ASM_PRUNE_PAIRWISE = 1, ASM_PRUNE_LP = 2 } asm_prune_mode;

typedef enum asm_log_base { ASM_LOG_E = 0, ASM_LOG_2 = 1 } asm_log_base;

/* Terminal cost of the built-in 4-cell grid agent: 1 in the goal cell
   (0,0,0,1) or 1 everywhere except the goal cell (1,1,1,0). */
typedef enum asm_grid_variant { ASM_GRID_AT_GOAL = 0, ASM_GRID_MISS_GOAL = 1 } asm_grid_variant;

typedef struct asm_model asm_model;
typedef struct asm_policy asm_policy;

ASM_API const char* asm_version(void);
ASM_API const char* asm_last_error(void);
ASM_API const char* asm_status_name(asm_status status);
/* Frees strings returned through char** out-parameters. */
ASM_API void asm_string_free(char* text);

/* Models: controlled HMM plus costs and horizon. */
ASM_API asm_status asm_model_load(const char* path, asm_model** out);
ASM_API asm_status asm_model_from_json(const char* json, asm_model** out);
ASM_API asm_status asm_model_grid_agent(asm_grid_variant variant, asm_model** out);
ASM_API void asm_model_free(asm_model* model);
ASM_API asm_status asm_model_save(const asm_model* model, const char* path);
ASM_API asm_status asm_model_to_json(const asm_model* model, char** out);
/* ASM_ERR_CONFIGURATION when the model is invalid; *report (may be NULL)
   then lists one violation per line. */
ASM_API asm_status asm_model_validate(const asm_model* model, char** report);
ASM_API asm_status asm_model_fingerprint(const asm_model* model, char** out);
ASM_API asm_status asm_model_dimensions(const asm_model* model, size_t* n_states,
                                        size_t* n_controls, size_t* n_observations,
                                        int* horizon);
/* Only allowed when the stage costs are stationary (a single table). */
ASM_API asm_status asm_model_set_horizon(asm_model* model, int horizon);

typedef struct asm_solve_options {
  asm_objective objective;
  int density;
  double epsilon;
  asm_prune_mode prune;
  double prune_tolerance;
  asm_log_base log_base;
} asm_solve_options;

ASM_API void asm_solve_options_init(asm_solve_options* options);

/* Policies: alpha-vector policies from asm_solve or a file, fixed-action
   policies, or a caller-supplied decision rule. */
ASM_API asm_status asm_solve(const asm_model* model, const asm_solve_options* options,
                             asm_policy** out);
ASM_API asm_status asm_policy_load(const char* path, asm_policy** out);
ASM_API asm_status asm_policy_fixed_action(size_t control, asm_policy** out);

/* Returns the control for `belief` (length n) at `stage`. Must return a valid
   control index; anything else fails the calling simulation. */
typedef size_t (*asm_decision_fn)(const double* belief, size_t n, int stage, void* user);
ASM_API asm_status asm_policy_callback(asm_decision_fn fn, void* user, asm_policy** out);
ASM_API void asm_policy_free(asm_policy* policy);

/* The following require an alpha-vector policy. */
ASM_API asm_status asm_policy_save(const asm_policy* policy, const char* path);
ASM_API asm_status asm_policy_to_json(const asm_policy* policy, char** out);
ASM_API asm_status asm_policy_fingerprint(const asm_policy* policy, char** out);
ASM_API asm_status asm_policy_horizon(const asm_policy* policy, int* horizon);
ASM_API asm_status asm_policy_stage_size(const asm_policy* policy, int stage, size_t* size);
ASM_API asm_status asm_policy_value(const asm_policy* policy, const double* belief, size_t n,
                                   int stage, double* value);

/* Works for every policy kind. */
ASM_API asm_status asm_policy_action(const asm_policy* policy, const double* belief, size_t n,
                                     int stage, size_t* control);

typedef struct asm_estimate {
  double mean;
  double standard_error; /* 0 for exact values, NaN for a single run */
} asm_estimate;

typedef struct asm_metrics {
  size_t runs; /* 0 for exact evaluation */
  int exact;
  asm_estimate terminal_cost;
  asm_estimate stage_cost;
  asm_estimate total_belief_entropy;
  asm_estimate smoother_entropy;
  asm_estimate total_cost;
} asm_metrics;

ASM_API asm_status asm_monte_carlo(const asm_model* model, const asm_policy* policy, size_t runs,
                                   uint64_t seed, asm_log_base log_base, asm_metrics* out);
/* Common random numbers: run r of every policy uses the same seed. */
ASM_API asm_status asm_compare(const asm_model* model, const asm_policy* const* policies,
                               size_t count, size_t runs, uint64_t seed, asm_log_base log_base,
                               asm_metrics* out);
ASM_API asm_status asm_exact_metrics(const asm_model* model, const asm_policy* policy,
                                     asm_log_base log_base, asm_metrics* out);
/* One simulated trajectory as JSON. initial_state < 0 samples it from the
   prior. */
ASM_API asm_status asm_rollout_json(const asm_model* model, const asm_policy* policy,
                                    uint64_t seed, asm_log_base log_base, long initial_state,
                                    char** out);

ASM_API uint64_t asm_derive_run_seed(uint64_t base_seed, uint64_t run);
ASM_API const char* asm_rng_description(void);

#ifdef __cplusplus
}
#endif

#endif
