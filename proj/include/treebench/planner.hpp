#pragma once

#include <span>
#include <string>
#include <vector>

#include "treebench/mdp.hpp"
#include "treebench/rng.hpp"
#include "treebench/tree.hpp"

namespace treebench {

enum class Variant { kVanilla, kMctsT, kMctsTPlus };

const char* variant_name(Variant v);
Variant variant_from_name(const std::string& name);

enum class LoopValueMode { kZero, kSaturating };

// How the root action is picked once the budget is spent. kAuto follows the
// variant: max visit count for vanilla, max Q for the sigma variants.
enum class RecommendMode { kAuto, kMaxCount, kMaxValue };

struct SearchConfig {
    Variant variant = Variant::kVanilla;
    double c = 1.0;              // exploration constant
    double gamma = 1.0;          // discount, in (0, 1]
    int trace_budget = 128;      // select-expand-backup iterations, >= 1
    int rollout_depth = 100;     // max random-policy steps from a fresh leaf, >= 0
    double eta = 1e-6;           // loop detection radius (mcts_t_plus only), >= 0
    uint64_t seed = 0;
    bool early_stop = false;     // stop once the root's sigma_tau hits 0
    LoopValueMode loop_value_mode = LoopValueMode::kSaturating;
    double value_bound = 1e6;    // saturation bound for loop values
    RecommendMode recommend = RecommendMode::kAuto;
    bool record_traces = false;  // fill SearchResult::traces with action paths
};

struct ActionStats {
    int n = 0;
    int n_tilde = 0;
    double q = 0.0;
    double child_sigma = 1.0;  // 1 for untried edges (the prior)
};

struct SearchResult {
    int recommended = -1;
    std::vector<ActionStats> root_stats;
    int traces_used = 0;
    double root_sigma_tau = 1.0;
    std::vector<std::vector<int>> traces;  // only when record_traces is set
};

// Discounted return of a uniform-random rollout: at most `depth` steps or
// until a terminal transition.
double rollout(const Environment& env, const StateVector& leaf_state, int depth, double gamma, Rng& rng);

// True when candidate lies within eta (L2) of any state in trace_states.
bool detect_loop(std::span<const StateVector> trace_states, const StateVector& candidate, double eta);

// Value assigned to a blocked loop with in-loop reward sum S, loop length L
// and `remaining_horizon` steps to fill (negative = infinite horizon).
// kZero mode pins it to 0. Otherwise: a zero reward sum is worth 0; with
// gamma = 1 and an infinite horizon the value saturates at +-value_bound by
// the sign of S; any finite horizon (or gamma < 1) treats the loop as paying
// S/L per step, discounted, clamped to +-value_bound.
double loop_value(double loop_reward_sum, double gamma, int remaining_horizon, int loop_length,
                  const SearchConfig& config);

// Root recommendation over tried edges; ties broken uniformly from rng.
int recommend(const SearchTree& tree, Variant variant, RecommendMode mode, Rng& rng);

// Full search from root_state. The tree is rebuilt from scratch; pass
// out_tree to keep it (for dumps or inspection).
SearchResult run_search(const Environment& env, const StateVector& root_state, const SearchConfig& config);
SearchResult run_search(const Environment& env, const StateVector& root_state, const SearchConfig& config,
                        SearchTree* out_tree);

}  // namespace treebench
