#include "treebench.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "treebench/bench.hpp"
#include "treebench/environments.hpp"
#include "treebench/oracle.hpp"
#include "treebench/planner.hpp"
#include "treebench/tree.hpp"

using namespace treebench;

namespace {

thread_local std::string g_last_error;

tb_status fail(tb_status status, const char* what) {
    g_last_error = what ? what : "";
    return status;
}

// Runs `fn`, translating exceptions into status codes.
template <typename Fn>
tb_status guarded(Fn&& fn) {
    try {
        fn();
        return TB_OK;
    } catch (const ContractViolation& e) {
        return fail(TB_INVALID_ARGUMENT, e.what());
    } catch (const LimitExceeded& e) {
        return fail(TB_LIMIT_EXCEEDED, e.what());
    } catch (const std::ios_base::failure& e) {
        return fail(TB_IO_ERROR, e.what());
    } catch (const std::exception& e) {
        return fail(TB_INTERNAL, e.what());
    } catch (...) {
        return fail(TB_INTERNAL, "unknown error");
    }
}

const Environment* unwrap(const tb_env* env) { return reinterpret_cast<const Environment*>(env); }

StateVector to_state(const Environment& env, const double* data) {
    if (!data) throw ContractViolation("state pointer is null");
    StateVector s = StateVector::zeros(env.state_dim());
    for (int i = 0; i < env.state_dim(); ++i) s[i] = data[i];
    return s;
}

void from_state(const StateVector& s, double* out) {
    for (int i = 0; i < s.size(); ++i) out[i] = s[i];
}

Variant to_variant(tb_variant v) {
    switch (v) {
        case TB_VARIANT_VANILLA: return Variant::kVanilla;
        case TB_VARIANT_MCTS_T: return Variant::kMctsT;
        case TB_VARIANT_MCTS_T_PLUS: return Variant::kMctsTPlus;
    }
    throw ContractViolation("unknown variant value");
}

SearchConfig to_search_config(const Environment& env, const tb_search_config& c) {
    SearchConfig sc;
    sc.variant = to_variant(c.variant);
    sc.c = c.c;
    sc.gamma = c.gamma;
    sc.trace_budget = c.trace_budget;
    sc.rollout_depth = c.rollout_depth < 0 ? 100 : c.rollout_depth;
    sc.eta = c.eta < 0 ? env.default_loop_threshold() : c.eta;
    sc.seed = c.seed;
    sc.early_stop = c.early_stop != 0;
    sc.loop_value_mode =
        c.loop_value_mode == TB_LOOP_VALUE_ZERO ? LoopValueMode::kZero : LoopValueMode::kSaturating;
    sc.value_bound = c.value_bound;
    switch (c.recommend) {
        case TB_RECOMMEND_MAX_COUNT: sc.recommend = RecommendMode::kMaxCount; break;
        case TB_RECOMMEND_MAX_VALUE: sc.recommend = RecommendMode::kMaxValue; break;
        default: sc.recommend = RecommendMode::kAuto; break;
    }
    return sc;
}

}  // namespace

extern "C" {

const char* tb_status_str(tb_status status) {
    switch (status) {
        case TB_OK: return "ok";
        case TB_INVALID_ARGUMENT: return "invalid argument";
        case TB_LIMIT_EXCEEDED: return "limit exceeded";
        case TB_IO_ERROR: return "io error";
        case TB_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* tb_last_error(void) { return g_last_error.c_str(); }

tb_status tb_env_create(const char* spec, uint64_t seed, tb_env** out) {
    if (!spec || !out) return fail(TB_INVALID_ARGUMENT, "spec and out must be non-null");
    *out = nullptr;
    return guarded([&] {
        std::unique_ptr<Environment> env = make_environment(spec, seed);
        *out = reinterpret_cast<tb_env*>(env.release());
    });
}

void tb_env_destroy(tb_env* env) { delete reinterpret_cast<Environment*>(env); }

int tb_env_num_actions(const tb_env* env) { return env ? unwrap(env)->num_actions() : 0; }

int tb_env_state_dim(const tb_env* env) { return env ? unwrap(env)->state_dim() : 0; }

const char* tb_env_name(const tb_env* env) {
    thread_local std::string name;
    if (!env) return "";
    name = unwrap(env)->name();
    return name.c_str();
}

tb_status tb_env_reset(const tb_env* env, uint64_t seed, double* state_out) {
    if (!env || !state_out) return fail(TB_INVALID_ARGUMENT, "env and state_out must be non-null");
    return guarded([&] { from_state(unwrap(env)->reset(seed), state_out); });
}

tb_status tb_env_step(const tb_env* env, const double* state, int action, double* next_state_out,
                      double* reward_out, int* terminal_out) {
    if (!env || !state || !next_state_out || !reward_out || !terminal_out)
        return fail(TB_INVALID_ARGUMENT, "all arguments must be non-null");
    return guarded([&] {
        const StepOutcome out = unwrap(env)->step(to_state(*unwrap(env), state), action);
        from_state(out.next_state, next_state_out);
        *reward_out = out.reward;
        *terminal_out = out.terminal ? 1 : 0;
    });
}

void tb_search_config_init(tb_search_config* config) {
    if (!config) return;
    config->variant = TB_VARIANT_VANILLA;
    config->c = 1.0;
    config->gamma = 1.0;
    config->trace_budget = 128;
    config->rollout_depth = -1;
    config->eta = -1.0;
    config->seed = 0;
    config->early_stop = 0;
    config->loop_value_mode = TB_LOOP_VALUE_SATURATING;
    config->value_bound = 1e6;
    config->recommend = TB_RECOMMEND_AUTO;
}

tb_status tb_run_search(const tb_env* env, const double* root_state, const tb_search_config* config,
                        tb_search_summary* summary, tb_action_stats* root_stats) {
    if (!env || !root_state || !config) return fail(TB_INVALID_ARGUMENT, "env, root_state, config required");
    return guarded([&] {
        const Environment& e = *unwrap(env);
        const SearchResult r = run_search(e, to_state(e, root_state), to_search_config(e, *config));
        if (summary) {
            summary->recommended = r.recommended;
            summary->traces_used = r.traces_used;
            summary->root_sigma_tau = r.root_sigma_tau;
        }
        if (root_stats) {
            for (size_t a = 0; a < r.root_stats.size(); ++a) {
                root_stats[a].n = r.root_stats[a].n;
                root_stats[a].n_tilde = r.root_stats[a].n_tilde;
                root_stats[a].q = r.root_stats[a].q;
                root_stats[a].child_sigma = r.root_stats[a].child_sigma;
            }
        }
    });
}

tb_status tb_run_search_dump(const tb_env* env, const double* root_state, const tb_search_config* config,
                             tb_search_summary* summary, char** dump_out) {
    if (!env || !root_state || !config || !dump_out)
        return fail(TB_INVALID_ARGUMENT, "env, root_state, config, dump_out required");
    *dump_out = nullptr;
    return guarded([&] {
        const Environment& e = *unwrap(env);
        SearchTree tree(StateVector{}, 1);
        const SearchResult r = run_search(e, to_state(e, root_state), to_search_config(e, *config), &tree);
        if (summary) {
            summary->recommended = r.recommended;
            summary->traces_used = r.traces_used;
            summary->root_sigma_tau = r.root_sigma_tau;
        }
        const std::string dump = tree.dump();
        char* s = static_cast<char*>(std::malloc(dump.size() + 1));
        if (!s) throw std::bad_alloc();
        std::memcpy(s, dump.c_str(), dump.size() + 1);
        *dump_out = s;
    });
}

void tb_string_free(char* s) { std::free(s); }

tb_status tb_oracle_enumerate(const tb_env* env, const double* state, int depth_cap, double gamma,
                              int loop_aware, long node_limit, tb_enum_report* report,
                              int* optimal_first_actions, int* num_optimal_out) {
    if (!env || !state || !report) return fail(TB_INVALID_ARGUMENT, "env, state, report required");
    return guarded([&] {
        const Environment& e = *unwrap(env);
        const EnumerationReport r =
            enumerate(e, to_state(e, state), depth_cap, gamma, loop_aware != 0,
                      node_limit > 0 ? node_limit : 10'000'000L);
        report->optimal_return = r.optimal_return;
        report->terminating_trace_count = r.terminating_trace_count;
        report->node_count = r.node_count;
        report->depth_capped = r.depth_capped ? 1 : 0;
        if (optimal_first_actions) {
            for (size_t i = 0; i < r.optimal_first_action.size(); ++i)
                optimal_first_actions[i] = r.optimal_first_action[i];
        }
        if (num_optimal_out) *num_optimal_out = static_cast<int>(r.optimal_first_action.size());
    });
}

void tb_experiment_config_init(tb_experiment_config* config) {
    if (!config) return;
    std::memset(config, 0, sizeof(*config));
    config->env_spec = "chain:10";
    config->episodes = 25;
    config->step_cap = 400;
    config->c = 1.0;
    config->gamma = 1.0;
    config->eta = -1.0;
    config->rollout_depth = -1;
    config->loop_value_mode = TB_LOOP_VALUE_SATURATING;
    config->value_bound = 1e6;
    config->recommend = TB_RECOMMEND_AUTO;
    config->threads = 1;
}

tb_status tb_run_experiment(const tb_experiment_config* config) {
    if (!config || !config->env_spec) return fail(TB_INVALID_ARGUMENT, "config and env_spec required");
    return guarded([&] {
        ExperimentConfig ec;
        ec.env_spec = config->env_spec;
        ec.variants.clear();
        for (int i = 0; i < config->num_variants; ++i) ec.variants.push_back(to_variant(config->variants[i]));
        if (ec.variants.empty())
            ec.variants = {Variant::kVanilla, Variant::kMctsT, Variant::kMctsTPlus};
        ec.budgets.clear();
        for (int i = 0; i < config->num_budgets; ++i) ec.budgets.push_back(config->budgets[i]);
        if (ec.budgets.empty()) ec.budgets = {8, 16, 32, 64, 128, 256, 512, 1024, 2048};
        ec.episodes = config->episodes;
        ec.step_cap = config->step_cap;
        ec.base_seed = config->seed;
        ec.c = config->c;
        ec.gamma = config->gamma;
        if (config->eta >= 0) ec.eta = config->eta;
        if (config->rollout_depth >= 0) ec.rollout_depth = config->rollout_depth;
        ec.early_stop = config->early_stop != 0;
        ec.loop_value_mode = config->loop_value_mode == TB_LOOP_VALUE_ZERO ? LoopValueMode::kZero
                                                                           : LoopValueMode::kSaturating;
        ec.value_bound = config->value_bound;
        switch (config->recommend) {
            case TB_RECOMMEND_MAX_COUNT: ec.recommend = RecommendMode::kMaxCount; break;
            case TB_RECOMMEND_MAX_VALUE: ec.recommend = RecommendMode::kMaxValue; break;
            default: ec.recommend = RecommendMode::kAuto; break;
        }
        ec.threads = config->threads > 0 ? config->threads : 1;
        ec.dump_trees = config->dump_trees != 0;
        ec.out_path = config->out_path ? config->out_path : "";
        const std::unique_ptr<Environment> env = make_environment(ec.env_spec, ec.base_seed);
        run_experiment(ec, *env);
    });
}

uint64_t tb_derive_seed(uint64_t base_seed, tb_variant variant, int budget, int episode) {
    return derive_seed(base_seed, to_variant(variant), budget, episode);
}

}  // extern "C"
