// treebench command line: experiment runner, single searches, exhaustive
// enumeration. Talks to the library exclusively through the C API.
#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "treebench.h"

namespace {

struct EnvHandle {
    tb_env* env = nullptr;
    ~EnvHandle() { tb_env_destroy(env); }
};

int die(tb_status status, const char* where) {
    std::fprintf(stderr, "%s: %s (%s)\n", where, tb_status_str(status), tb_last_error());
    return 1;
}

tb_variant parse_variant(const std::string& name) {
    if (name == "vanilla") return TB_VARIANT_VANILLA;
    if (name == "mcts_t") return TB_VARIANT_MCTS_T;
    if (name == "mcts_t_plus") return TB_VARIANT_MCTS_T_PLUS;
    throw CLI::ValidationError("variant", "expected vanilla, mcts_t or mcts_t_plus");
}

const char* variant_str(tb_variant v) {
    switch (v) {
        case TB_VARIANT_VANILLA: return "vanilla";
        case TB_VARIANT_MCTS_T: return "mcts_t";
        default: return "mcts_t_plus";
    }
}

struct CommonOpts {
    std::string env_spec = "chain:10";
    double c = 1.0;
    double gamma = 1.0;
    double eta = -1.0;
    int rollout_depth = -1;
    uint64_t seed = 0;
    bool early_stop = false;
    std::string loop_value = "saturating";
    double value_bound = 1e6;
    std::string recommend = "auto";
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--env", o.env_spec,
                    "environment spec: chain:N[:fixed|:hashed], cyclic:N[:fixed|:hashed], "
                    "gridlake:4x4|8x8|@file, cartpole");
    cmd->add_option("--c", o.c, "exploration constant");
    cmd->add_option("--gamma", o.gamma, "discount factor in (0,1]");
    cmd->add_option("--eta", o.eta, "loop detection radius (default: per environment)");
    cmd->add_option("--rollout-depth", o.rollout_depth,
                    "max rollout steps (default: remaining horizon, capped at 100)");
    cmd->add_option("--seed", o.seed, "base seed");
    cmd->add_flag("--early-stop", o.early_stop, "stop a search once the root sigma_tau reaches 0");
    cmd->add_option("--loop-value", o.loop_value, "loop valuation: saturating or zero")
        ->check(CLI::IsMember({"saturating", "zero"}));
    cmd->add_option("--value-bound", o.value_bound, "saturation bound for loop values");
    cmd->add_option("--recommend", o.recommend, "root recommendation rule: auto, count or value")
        ->check(CLI::IsMember({"auto", "count", "value"}));
}

tb_search_config search_config_from(const CommonOpts& o, tb_variant variant, int budget) {
    tb_search_config sc;
    tb_search_config_init(&sc);
    sc.variant = variant;
    sc.c = o.c;
    sc.gamma = o.gamma;
    sc.trace_budget = budget;
    sc.rollout_depth = o.rollout_depth;
    sc.eta = o.eta;
    sc.seed = o.seed;
    sc.early_stop = o.early_stop ? 1 : 0;
    sc.loop_value_mode = o.loop_value == "zero" ? TB_LOOP_VALUE_ZERO : TB_LOOP_VALUE_SATURATING;
    sc.value_bound = o.value_bound;
    sc.recommend = o.recommend == "count"   ? TB_RECOMMEND_MAX_COUNT
                   : o.recommend == "value" ? TB_RECOMMEND_MAX_VALUE
                                            : TB_RECOMMEND_AUTO;
    return sc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tree search planners and benchmark harness for deterministic MDPs"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from an INI file; command line overrides it");

    // run ------------------------------------------------------------
    CommonOpts run_opts;
    std::vector<std::string> run_variants = {"vanilla", "mcts_t", "mcts_t_plus"};
    std::vector<int> run_budgets;
    int run_episodes = 25;
    int run_step_cap = 400;
    int run_threads = 1;
    bool run_dump_trees = false;
    std::string run_out = "results.csv";

    CLI::App* run = app.add_subcommand("run", "run a benchmark experiment, writing CSV and plot data");
    add_common(run, run_opts);
    run->add_option("--variant", run_variants, "planner variants to run (repeatable)");
    run->add_option("--budget", run_budgets, "trace budgets (repeatable; default powers of two 8..2048)");
    run->add_option("--episodes", run_episodes, "episodes per (variant, budget) cell");
    run->add_option("--step-cap", run_step_cap, "max real steps per episode");
    run->add_option("--threads", run_threads, "worker threads for episode cells");
    run->add_flag("--dump-trees", run_dump_trees, "write every planning call's tree dump");
    run->add_option("--out", run_out, "rows CSV path (aggregate/plot files derive from it)");

    // search ----------------------------------------------------------
    CommonOpts search_opts;
    std::string search_variant = "mcts_t";
    int search_budget = 128;
    bool search_dump = false;

    CLI::App* search = app.add_subcommand("search", "run one search from the environment's start state");
    add_common(search, search_opts);
    search->add_option("--variant", search_variant, "planner variant")
        ->check(CLI::IsMember({"vanilla", "mcts_t", "mcts_t_plus"}));
    search->add_option("--budget", search_budget, "trace budget");
    search->add_flag("--dump-tree", search_dump, "print the final search tree");

    // enumerate ---------------------------------------------------------
    CommonOpts enum_opts;
    int enum_depth_cap = 20;
    bool enum_loop_aware = false;
    long enum_node_limit = 10'000'000;

    CLI::App* enumerate = app.add_subcommand("enumerate", "exhaustively expand the MDP from the start state");
    add_common(enumerate, enum_opts);
    enumerate->add_option("--depth-cap", enum_depth_cap, "max actions from the root");
    enumerate->add_flag("--loop-aware", enum_loop_aware, "prune in-trace state repeats");
    enumerate->add_option("--node-limit", enum_node_limit, "refuse beyond this many nodes");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) {
        std::vector<tb_variant> variants;
        for (const std::string& v : run_variants) variants.push_back(parse_variant(v));
        tb_experiment_config ec;
        tb_experiment_config_init(&ec);
        ec.env_spec = run_opts.env_spec.c_str();
        ec.variants = variants.data();
        ec.num_variants = static_cast<int>(variants.size());
        ec.budgets = run_budgets.empty() ? nullptr : run_budgets.data();
        ec.num_budgets = static_cast<int>(run_budgets.size());
        ec.episodes = run_episodes;
        ec.step_cap = run_step_cap;
        ec.seed = run_opts.seed;
        ec.c = run_opts.c;
        ec.gamma = run_opts.gamma;
        ec.eta = run_opts.eta;
        ec.rollout_depth = run_opts.rollout_depth;
        ec.early_stop = run_opts.early_stop ? 1 : 0;
        ec.loop_value_mode =
            run_opts.loop_value == "zero" ? TB_LOOP_VALUE_ZERO : TB_LOOP_VALUE_SATURATING;
        ec.value_bound = run_opts.value_bound;
        ec.recommend = run_opts.recommend == "count"   ? TB_RECOMMEND_MAX_COUNT
                       : run_opts.recommend == "value" ? TB_RECOMMEND_MAX_VALUE
                                                       : TB_RECOMMEND_AUTO;
        ec.threads = run_threads;
        ec.dump_trees = run_dump_trees ? 1 : 0;
        ec.out_path = run_out.c_str();
        const tb_status st = tb_run_experiment(&ec);
        if (st != TB_OK) return die(st, "run");
        std::printf("wrote %s\n", run_out.c_str());
        return 0;
    }

    if (search->parsed()) {
        EnvHandle h;
        tb_status st = tb_env_create(search_opts.env_spec.c_str(), search_opts.seed, &h.env);
        if (st != TB_OK) return die(st, "env");
        std::vector<double> state(static_cast<size_t>(tb_env_state_dim(h.env)));
        st = tb_env_reset(h.env, search_opts.seed, state.data());
        if (st != TB_OK) return die(st, "reset");

        const tb_variant variant = parse_variant(search_variant);
        const tb_search_config sc = search_config_from(search_opts, variant, search_budget);
        tb_search_summary summary;
        std::vector<tb_action_stats> stats(static_cast<size_t>(tb_env_num_actions(h.env)));
        char* dump = nullptr;
        if (search_dump) {
            st = tb_run_search_dump(h.env, state.data(), &sc, &summary, &dump);
        } else {
            st = tb_run_search(h.env, state.data(), &sc, &summary, stats.data());
        }
        if (st != TB_OK) return die(st, "search");

        std::printf("env=%s variant=%s budget=%d\n", tb_env_name(h.env), variant_str(variant), search_budget);
        std::printf("recommended=%d traces_used=%d root_sigma=%.6g\n", summary.recommended,
                    summary.traces_used, summary.root_sigma_tau);
        if (!search_dump) {
            for (size_t a = 0; a < stats.size(); ++a)
                std::printf("  a%zu: n=%d nt=%d q=%.6g child_sigma=%.6g\n", a, stats[a].n,
                            stats[a].n_tilde, stats[a].q, stats[a].child_sigma);
        }
        if (dump) {
            std::fputs(dump, stdout);
            tb_string_free(dump);
        }
        return 0;
    }

    // enumerate
    EnvHandle h;
    tb_status st = tb_env_create(enum_opts.env_spec.c_str(), enum_opts.seed, &h.env);
    if (st != TB_OK) return die(st, "env");
    std::vector<double> state(static_cast<size_t>(tb_env_state_dim(h.env)));
    st = tb_env_reset(h.env, enum_opts.seed, state.data());
    if (st != TB_OK) return die(st, "reset");

    tb_enum_report report;
    std::vector<int> best(static_cast<size_t>(tb_env_num_actions(h.env)));
    int num_best = 0;
    st = tb_oracle_enumerate(h.env, state.data(), enum_depth_cap, enum_opts.gamma,
                             enum_loop_aware ? 1 : 0, enum_node_limit, &report, best.data(), &num_best);
    if (st != TB_OK) return die(st, "enumerate");

    std::printf("env=%s depth_cap=%d loop_aware=%d\n", tb_env_name(h.env), enum_depth_cap,
                enum_loop_aware ? 1 : 0);
    std::printf("optimal_return=%.6g terminating_traces=%ld nodes=%ld depth_capped=%d\n",
                report.optimal_return, report.terminating_trace_count, report.node_count,
                report.depth_capped);
    std::printf("optimal_first_actions=");
    for (int i = 0; i < num_best; ++i) std::printf(i ? ",%d" : "%d", best[static_cast<size_t>(i)]);
    std::printf("\n");
    return 0;
}
