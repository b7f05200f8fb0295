#include "treebench/oracle.hpp"

#include <algorithm>

namespace treebench {

namespace {

struct Walker {
    const Environment& env;
    double gamma;
    int depth_cap;
    bool loop_aware;
    long node_limit;

    long nodes = 1;  // the root
    long terminating = 0;
    bool capped = false;
    std::vector<StateVector> path;

    void count_node() {
        if (++nodes > node_limit) throw LimitExceeded("enumerate: node limit exceeded");
    }

    bool seen_on_path(const StateVector& s) const {
        for (const StateVector& p : path)
            if (p == s) return true;
        return false;
    }

    // best discounted return achievable from `state`, `depth` actions deep
    double best_from(const StateVector& state, int depth) {
        double best = -std::numeric_limits<double>::infinity();
        path.push_back(state);
        for (int a = 0; a < env.num_actions(); ++a) {
            const StepOutcome out = env.step(state, a);
            count_node();
            double v;
            if (out.terminal) {
                ++terminating;
                v = out.reward;
            } else if (loop_aware && seen_on_path(out.next_state)) {
                v = out.reward;  // loop-pruned leaf, nothing beyond it
            } else if (depth + 1 >= depth_cap) {
                capped = true;
                v = out.reward;
            } else {
                v = out.reward + gamma * best_from(out.next_state, depth + 1);
            }
            best = std::max(best, v);
        }
        path.pop_back();
        return best;
    }
};

}  // namespace

EnumerationReport enumerate(const Environment& env, const StateVector& state, int depth_cap, double gamma,
                            bool loop_aware, long node_limit) {
    if (depth_cap < 1) throw ContractViolation("enumerate: depth_cap must be >= 1");
    if (!(gamma > 0.0) || gamma > 1.0) throw ContractViolation("enumerate: gamma must be in (0, 1]");
    if (node_limit < 1) throw ContractViolation("enumerate: node_limit must be >= 1");

    Walker w{.env = env, .gamma = gamma, .depth_cap = depth_cap, .loop_aware = loop_aware,
             .node_limit = node_limit, .path = {}};
    EnumerationReport report;

    // expand the root by hand so the argmax set can be collected
    w.path.push_back(state);
    std::vector<double> values(static_cast<size_t>(env.num_actions()));
    for (int a = 0; a < env.num_actions(); ++a) {
        const StepOutcome out = env.step(state, a);
        w.count_node();
        double v;
        if (out.terminal) {
            ++w.terminating;
            v = out.reward;
        } else if (loop_aware && w.seen_on_path(out.next_state)) {
            v = out.reward;
        } else if (depth_cap == 1) {
            w.capped = true;
            v = out.reward;
        } else {
            v = out.reward + gamma * w.best_from(out.next_state, 1);
        }
        values[static_cast<size_t>(a)] = v;
    }

    report.optimal_return = *std::max_element(values.begin(), values.end());
    for (int a = 0; a < env.num_actions(); ++a)
        if (values[static_cast<size_t>(a)] == report.optimal_return) report.optimal_first_action.push_back(a);
    report.terminating_trace_count = w.terminating;
    report.node_count = w.nodes;
    report.depth_capped = w.capped;
    return report;
}

}  // namespace treebench
