/* C interface to the treebench planning library. All functions return a
 * tb_status; outputs are written through caller-supplied pointers. Handles
 * are opaque and must be released with their destroy function. A thread-local
 * message for the most recent failure is available via tb_last_error(). */
#ifndef TREEBENCH_H
#define TREEBENCH_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tb_status {
    TB_OK = 0,
    TB_INVALID_ARGUMENT = 1, /* bad spec string, contract violation */
    TB_LIMIT_EXCEEDED = 2,   /* enumeration safety limit hit */
    TB_IO_ERROR = 3,
    TB_INTERNAL = 4
} tb_status;

typedef enum tb_variant {
    TB_VARIANT_VANILLA = 0,
    TB_VARIANT_MCTS_T = 1,
    TB_VARIANT_MCTS_T_PLUS = 2
} tb_variant;

typedef enum tb_loop_value_mode {
    TB_LOOP_VALUE_SATURATING = 0,
    TB_LOOP_VALUE_ZERO = 1
} tb_loop_value_mode;

typedef enum tb_recommend_mode {
    TB_RECOMMEND_AUTO = 0,
    TB_RECOMMEND_MAX_COUNT = 1,
    TB_RECOMMEND_MAX_VALUE = 2
} tb_recommend_mode;

const char* tb_status_str(tb_status status);

/* Message describing this thread's most recent failure ("" if none). The
 * pointer is invalidated by the next failing call on the same thread. */
const char* tb_last_error(void);

/* ------------------------------------------------------------------ */
/* Environments                                                        */

typedef struct tb_env tb_env;

/* Spec strings: chain:N[:fixed|:hashed], cyclic:N[:fixed|:hashed],
 * gridlake:4x4, gridlake:8x8, gridlake:@/path/to/map.txt, cartpole. */
tb_status tb_env_create(const char* spec, uint64_t seed, tb_env** out);
void tb_env_destroy(tb_env* env);

int tb_env_num_actions(const tb_env* env);
int tb_env_state_dim(const tb_env* env);
const char* tb_env_name(const tb_env* env);

/* state_out must hold tb_env_state_dim(env) doubles. */
tb_status tb_env_reset(const tb_env* env, uint64_t seed, double* state_out);
tb_status tb_env_step(const tb_env* env, const double* state, int action, double* next_state_out,
                      double* reward_out, int* terminal_out);

/* ------------------------------------------------------------------ */
/* Search                                                              */

typedef struct tb_search_config {
    tb_variant variant;
    double c;
    double gamma;
    int trace_budget;
    int rollout_depth; /* -1: remaining horizon capped at 100 (harness), else >= 0 */
    double eta;        /* -1: environment default */
    uint64_t seed;
    int early_stop;
    tb_loop_value_mode loop_value_mode;
    double value_bound;
    tb_recommend_mode recommend;
} tb_search_config;

void tb_search_config_init(tb_search_config* config);

typedef struct tb_action_stats {
    int n;
    int n_tilde;
    double q;
    double child_sigma;
} tb_action_stats;

typedef struct tb_search_summary {
    int recommended;
    int traces_used;
    double root_sigma_tau;
} tb_search_summary;

/* root_stats (may be NULL) must hold tb_env_num_actions(env) entries. A
 * rollout_depth of -1 resolves to 100 here; there is no surrounding episode. */
tb_status tb_run_search(const tb_env* env, const double* root_state, const tb_search_config* config,
                        tb_search_summary* summary, tb_action_stats* root_stats);

/* As tb_run_search, but also returns the final tree's text dump. Free the
 * string with tb_string_free. */
tb_status tb_run_search_dump(const tb_env* env, const double* root_state, const tb_search_config* config,
                             tb_search_summary* summary, char** dump_out);

void tb_string_free(char* s);

/* ------------------------------------------------------------------ */
/* Oracle                                                              */

typedef struct tb_enum_report {
    double optimal_return;
    long terminating_trace_count;
    long node_count;
    int depth_capped;
} tb_enum_report;

/* optimal_first_actions (may be NULL) must hold tb_env_num_actions(env) ints;
 * the first *num_optimal_out entries are filled. */
tb_status tb_oracle_enumerate(const tb_env* env, const double* state, int depth_cap, double gamma,
                              int loop_aware, long node_limit, tb_enum_report* report,
                              int* optimal_first_actions, int* num_optimal_out);

/* ------------------------------------------------------------------ */
/* Benchmark harness                                                   */

typedef struct tb_experiment_config {
    const char* env_spec;
    const tb_variant* variants;
    int num_variants;
    const int* budgets;
    int num_budgets;
    int episodes;
    int step_cap;
    uint64_t seed;
    double c;
    double gamma;
    double eta;        /* -1: environment default */
    int rollout_depth; /* -1: remaining horizon capped at 100 */
    int early_stop;
    tb_loop_value_mode loop_value_mode;
    double value_bound;
    tb_recommend_mode recommend;
    int threads;
    int dump_trees;
    const char* out_path; /* rows CSV; aggregate/plot paths derived from it */
} tb_experiment_config;

void tb_experiment_config_init(tb_experiment_config* config);

tb_status tb_run_experiment(const tb_experiment_config* config);

/* Episode seed used by the harness for (base_seed, variant, budget, episode). */
uint64_t tb_derive_seed(uint64_t base_seed, tb_variant variant, int budget, int episode);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* TREEBENCH_H */
