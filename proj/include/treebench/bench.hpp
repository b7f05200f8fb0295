#pragma once

#include <optional>
#include <string>
#include <vector>

#include "treebench/mdp.hpp"
#include "treebench/planner.hpp"

namespace treebench {

struct EpisodeResult {
    std::string env;
    std::string variant;
    int budget = 0;
    int episode = 0;
    uint64_t seed = 0;
    double total_return = 0.0;  // undiscounted
    int steps = 0;
    double mean_plan_ms = 0.0;  // wall time per planning call
};

struct ExperimentConfig {
    std::string env_spec = "chain:10";
    std::vector<Variant> variants = {Variant::kVanilla, Variant::kMctsT, Variant::kMctsTPlus};
    std::vector<int> budgets = {8, 16, 32, 64, 128, 256, 512, 1024, 2048};
    int episodes = 25;
    int step_cap = 400;
    uint64_t base_seed = 0;

    // planner settings shared by every cell
    double c = 1.0;
    double gamma = 1.0;
    std::optional<double> eta;          // default: environment's loop threshold
    std::optional<int> rollout_depth;   // default: remaining horizon, capped at 100
    bool early_stop = false;
    LoopValueMode loop_value_mode = LoopValueMode::kSaturating;
    double value_bound = 1e6;
    RecommendMode recommend = RecommendMode::kAuto;

    int threads = 1;
    bool dump_trees = false;
    std::string out_path;  // rows CSV; aggregate and plot files derive from it
};

struct AggregateRow {
    std::string env;
    std::string variant;
    int budget = 0;
    int episodes = 0;
    double mean_return = 0.0;
    double stderr_return = 0.0;
    double mean_steps = 0.0;
    double mean_plan_ms = 0.0;
};

// Per-episode planner seeds: one stable derivation shared by the harness and
// anything reproducing a single cell.
uint64_t derive_seed(uint64_t base_seed, Variant variant, int budget, int episode);

// Plays one episode: fresh search per real step, recommended action executed,
// episode ends on a terminal transition or after step_cap steps. `config.seed`
// seeds env.reset and the per-step searches. When trace_sink is non-null each
// planning call's tree dump is appended to it.
EpisodeResult run_episode(const Environment& env, const SearchConfig& config, int step_cap, uint64_t seed,
                          std::string* trace_sink = nullptr);

// Full cross product variants x budgets x episodes, row order fixed by that
// enumeration regardless of thread count. When out_path is set, writes rows
// CSV, an aggregate CSV and a plot-data file next to it.
std::vector<EpisodeResult> run_experiment(const ExperimentConfig& config, const Environment& env);

std::vector<AggregateRow> aggregate_results(const std::vector<EpisodeResult>& rows);

extern const char* const kCsvHeader;  // env,variant,budget,episode,seed,return,steps,mean_plan_ms

std::string format_csv(const std::vector<EpisodeResult>& rows);
std::string format_aggregate_csv(const std::vector<AggregateRow>& rows);

// One labeled series block per variant: budget, mean return, standard error.
std::string format_plot_data(const std::vector<AggregateRow>& rows);

void write_file(const std::string& path, const std::string& content);

// out_path "results.csv" -> {"results.csv", "results_agg.csv", "results_plot.txt"}
struct OutputPaths {
    std::string rows, aggregate, plot, trees;
};
OutputPaths derive_output_paths(const std::string& out_path);

}  // namespace treebench
