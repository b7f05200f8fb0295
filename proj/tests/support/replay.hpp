#pragma once

// Hand-scripted five-visit tree used by test_tree and the acceptance checks.

#include <array>
#include <utility>
#include <vector>

#include "treebench/tree.hpp"

namespace treebench::testenv {

struct FiveVisitReplay {
    std::array<double, 5> root_sigma;  // after each of the five visits
    SearchTree tree;
};

// Script: the root's creation counts as its first visit. Then four traces,
// all with zero rewards and zero leaf values:
//   a0 -> fresh non-terminal child C
//   a1 -> terminal leaf
//   a0 -> C -> b0 -> terminal leaf
//   a0 -> C -> b1 -> terminal leaf
// The expected root sigma sequence is 1, 1, 1/2, 1/3, 0: once C is the only
// open subtree its weight is 2 of the root's 3 edge visits, and the last
// trace closes it entirely.
inline FiveVisitReplay run_five_visit_replay() {
    FiveVisitReplay out{{}, SearchTree(StateVector{0.0}, 2)};
    SearchTree& tree = out.tree;
    const NodeId root = tree.root();
    out.root_sigma[0] = tree.at(root).sigma_tau;

    auto run_trace = [&](std::vector<TraceStep> steps, NodeId leaf) {
        Trace trace;
        trace.steps = std::move(steps);
        trace.leaf = leaf;
        trace.leaf_value = 0.0;
        update_shadow_counts(tree, trace);
        backup_value_reweighted(tree, trace, 1.0);
        backup_sigma(tree, trace);
    };

    const NodeId c = tree.expand(root, 0, {StateVector{1.0}, 0.0, false});
    run_trace({{root, 0, 0}}, c);
    out.root_sigma[1] = tree.at(root).sigma_tau;

    const NodeId t1 = tree.expand(root, 1, {StateVector{2.0}, 0.0, true});
    run_trace({{root, 1, 1}}, t1);
    out.root_sigma[2] = tree.at(root).sigma_tau;

    const NodeId t2 = tree.expand(c, 0, {StateVector{3.0}, 0.0, true});
    run_trace({{root, 0, 0}, {c, 0, 0}}, t2);
    out.root_sigma[3] = tree.at(root).sigma_tau;

    const NodeId t3 = tree.expand(c, 1, {StateVector{4.0}, 0.0, true});
    run_trace({{root, 0, 0}, {c, 1, 1}}, t3);
    out.root_sigma[4] = tree.at(root).sigma_tau;

    return out;
}

}  // namespace treebench::testenv
