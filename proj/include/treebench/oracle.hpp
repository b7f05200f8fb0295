#pragma once

#include <vector>

#include "treebench/mdp.hpp"

namespace treebench {

struct EnumerationReport {
    double optimal_return = 0.0;            // max discounted return from the root state
    std::vector<int> optimal_first_action;  // every first action achieving it
    long terminating_trace_count = 0;       // action sequences ending in a terminal transition
    long node_count = 0;                    // expanded nodes, root and leaves included
    bool depth_capped = false;              // some branch was cut at depth_cap
};

// Exhaustive expansion of the deterministic MDP from `state`, to terminal
// transitions or depth_cap actions. With loop_aware, a successor matching an
// in-trace ancestor exactly becomes a leaf worth 0 (the loop-pruned tree).
// Branches cut by depth_cap contribute their truncated return. Throws
// LimitExceeded once more than node_limit nodes are expanded.
EnumerationReport enumerate(const Environment& env, const StateVector& state, int depth_cap, double gamma,
                            bool loop_aware, long node_limit = 10'000'000);

}  // namespace treebench
