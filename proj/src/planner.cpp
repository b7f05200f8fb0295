#include "treebench/planner.hpp"

#include <algorithm>
#include <cmath>

namespace treebench {

const char* variant_name(Variant v) {
    switch (v) {
        case Variant::kVanilla: return "vanilla";
        case Variant::kMctsT: return "mcts_t";
        case Variant::kMctsTPlus: return "mcts_t_plus";
    }
    return "?";
}

Variant variant_from_name(const std::string& name) {
    if (name == "vanilla") return Variant::kVanilla;
    if (name == "mcts_t") return Variant::kMctsT;
    if (name == "mcts_t_plus") return Variant::kMctsTPlus;
    throw ContractViolation("unknown variant '" + name + "'");
}

double rollout(const Environment& env, const StateVector& leaf_state, int depth, double gamma, Rng& rng) {
    if (depth < 0) throw ContractViolation("rollout: depth must be >= 0");
    double acc = 0.0;
    double disc = 1.0;
    StateVector state = leaf_state;
    const uint32_t na = static_cast<uint32_t>(env.num_actions());
    for (int i = 0; i < depth; ++i) {
        const int action = static_cast<int>(rng.uniform_int(na));
        StepOutcome out = env.step(state, action);
        acc += disc * out.reward;
        if (out.terminal) break;
        disc *= gamma;
        state = out.next_state;
    }
    return acc;
}

bool detect_loop(std::span<const StateVector> trace_states, const StateVector& candidate, double eta) {
    if (eta < 0) throw ContractViolation("detect_loop: eta must be >= 0");
    for (const StateVector& s : trace_states)
        if (l2_distance(s, candidate) < eta) return true;
    return false;
}

double loop_value(double loop_reward_sum, double gamma, int remaining_horizon, int loop_length,
                  const SearchConfig& config) {
    if (loop_length < 1) throw ContractViolation("loop_value: loop_length must be >= 1");
    if (config.loop_value_mode == LoopValueMode::kZero) return 0.0;
    if (loop_reward_sum == 0.0) return 0.0;
    const double bound = config.value_bound;
    if (gamma == 1.0 && remaining_horizon < 0) {
        return loop_reward_sum > 0 ? bound : -bound;
    }
    const double per_step = loop_reward_sum / static_cast<double>(loop_length);
    double v;
    if (gamma == 1.0) {
        v = per_step * static_cast<double>(remaining_horizon);
    } else if (remaining_horizon < 0) {
        v = per_step / (1.0 - gamma);
    } else {
        v = per_step * (1.0 - std::pow(gamma, remaining_horizon)) / (1.0 - gamma);
    }
    return std::clamp(v, -bound, bound);
}

int recommend(const SearchTree& tree, Variant variant, RecommendMode mode, Rng& rng) {
    const TreeNode& root = tree.at(tree.root());
    if (!root.has_tried_edge()) throw ContractViolation("recommend: root has no tried edge");
    const bool by_count = (mode == RecommendMode::kMaxCount) ||
                          (mode == RecommendMode::kAuto && variant == Variant::kVanilla);
    std::vector<int> best;
    double top = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < static_cast<int>(root.edges.size()); ++a) {
        const ActionEdge& e = root.edges[static_cast<size_t>(a)];
        if (e.n == 0) continue;
        const double score = by_count ? static_cast<double>(e.n) : e.q;
        if (score > top) {
            top = score;
            best.clear();
            best.push_back(a);
        } else if (score == top) {
            best.push_back(a);
        }
    }
    if (best.size() == 1) return best[0];
    return best[static_cast<size_t>(rng.uniform_int(static_cast<uint32_t>(best.size())))];
}

namespace {

void validate(const SearchConfig& cfg) {
    if (cfg.trace_budget < 1) throw ContractViolation("search: trace_budget must be >= 1");
    if (cfg.rollout_depth < 0) throw ContractViolation("search: rollout_depth must be >= 0");
    if (!(cfg.gamma > 0.0) || cfg.gamma > 1.0) throw ContractViolation("search: gamma must be in (0, 1]");
    if (cfg.c < 0) throw ContractViolation("search: c must be >= 0");
    if (cfg.eta < 0) throw ContractViolation("search: eta must be >= 0");
    if (cfg.value_bound <= 0) throw ContractViolation("search: value_bound must be > 0");
}

}  // namespace

SearchResult run_search(const Environment& env, const StateVector& root_state, const SearchConfig& config) {
    return run_search(env, root_state, config, nullptr);
}

SearchResult run_search(const Environment& env, const StateVector& root_state, const SearchConfig& config,
                        SearchTree* out_tree) {
    validate(config);
    const bool sigma_variant = config.variant != Variant::kVanilla;
    const bool block_loops = config.variant == Variant::kMctsTPlus;

    SearchTree fresh(root_state, env.num_actions(), static_cast<size_t>(config.trace_budget) + 2);
    if (out_tree) *out_tree = std::move(fresh);
    SearchTree& tree = out_tree ? *out_tree : fresh;

    Rng rng(config.seed);
    SearchResult result;
    Trace trace;
    std::vector<StateVector> trace_states;  // states along the current descent, root first

    int traces = 0;
    while (traces < config.trace_budget) {
        trace.steps.clear();
        trace_states.clear();
        NodeId id = tree.root();
        trace_states.push_back(tree.at(id).state);

        // descend until an untried edge, a terminal node or a looped node
        for (;;) {
            TreeNode& node = tree.at(id);
            if (node.terminal || node.looped) {
                trace.leaf = id;
                trace.leaf_value = node.leaf_value;
                break;
            }
            SelectPick pick;
            if (sigma_variant) {
                pick = select_action_sigma_with_shadow(tree, id, config.c, rng);
            } else {
                pick.action = select_action_vanilla(tree, id, config.c, rng);
                pick.shadow_action = pick.action;
            }
            trace.steps.push_back({id, pick.action, pick.shadow_action});
            const ActionEdge& edge = tree.at(id).edges[static_cast<size_t>(pick.action)];
            if (edge.child == kNullNode) {
                const StepOutcome out = env.step(tree.at(id).state, pick.action);
                const NodeId leaf = tree.expand(id, pick.action, out);
                TreeNode& leaf_node = tree.at(leaf);
                if (out.terminal) {
                    leaf_node.leaf_value = 0.0;
                } else if (block_loops) {
                    // match against the deepest in-trace ancestor for the shortest loop
                    int match = -1;
                    for (int i = static_cast<int>(trace_states.size()) - 1; i >= 0; --i) {
                        if (l2_distance(trace_states[static_cast<size_t>(i)], leaf_node.state) < config.eta) {
                            match = i;
                            break;
                        }
                    }
                    if (match >= 0) {
                        leaf_node.looped = true;
                        leaf_node.sigma_tau = 0.0;
                        double loop_sum = 0.0;
                        for (size_t i = static_cast<size_t>(match); i < trace.steps.size(); ++i) {
                            const TraceStep& st = trace.steps[i];
                            loop_sum += tree.at(st.node).edges[static_cast<size_t>(st.action)].reward;
                        }
                        const int loop_len = static_cast<int>(trace.steps.size()) - match;
                        leaf_node.leaf_value =
                            loop_value(loop_sum, config.gamma, config.rollout_depth, loop_len, config);
                    } else {
                        leaf_node.leaf_value = rollout(env, leaf_node.state, config.rollout_depth, config.gamma, rng);
                    }
                } else {
                    leaf_node.leaf_value = rollout(env, leaf_node.state, config.rollout_depth, config.gamma, rng);
                }
                trace.leaf = leaf;
                trace.leaf_value = leaf_node.leaf_value;
                break;
            }
            id = edge.child;
            trace_states.push_back(tree.at(id).state);
        }

        if (config.record_traces) {
            std::vector<int> actions;
            actions.reserve(trace.steps.size());
            for (const TraceStep& st : trace.steps) actions.push_back(st.action);
            result.traces.push_back(std::move(actions));
        }

        if (sigma_variant) {
            update_shadow_counts(tree, trace);
            backup_value_reweighted(tree, trace, config.gamma);
            backup_sigma(tree, trace);
        } else {
            backup_trace_vanilla(tree, trace, config.gamma);
        }
        ++traces;

        if (config.early_stop && tree.at(tree.root()).sigma_tau == 0.0) break;
    }

    result.recommended = recommend(tree, config.variant, config.recommend, rng);
    result.traces_used = traces;
    result.root_sigma_tau = tree.at(tree.root()).sigma_tau;
    const TreeNode& root = tree.at(tree.root());
    result.root_stats.reserve(root.edges.size());
    for (const ActionEdge& e : root.edges) {
        ActionStats st;
        st.n = e.n;
        st.n_tilde = e.n_tilde;
        st.q = e.q;
        st.child_sigma = (e.child != kNullNode) ? tree.at(e.child).sigma_tau : 1.0;
        result.root_stats.push_back(st);
    }
    return result;
}

}  // namespace treebench
