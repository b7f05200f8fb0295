#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "treebench/mdp.hpp"
#include "treebench/rng.hpp"

namespace treebench {

using NodeId = int32_t;
constexpr NodeId kNullNode = -1;

struct ActionEdge {
    int n = 0;         // real visit count
    int n_tilde = 0;   // shadow count (what greedy selection would have visited)
    double w = 0.0;    // cumulative return; maintained by the vanilla backup only
    double q = 0.0;
    double reward = 0.0;  // r(s,a); cached at expansion, the MDP is deterministic
    NodeId child = kNullNode;
};

struct TreeNode {
    StateVector state;
    bool terminal = false;
    bool looped = false;
    double sigma_tau = 1.0;   // subtree-size uncertainty in [0,1]
    double leaf_value = 0.0;  // rollout return, 0 for terminal, loop value for looped
    std::vector<ActionEdge> edges;

    // n(s) = sum of edge counts + 1 (the expansion visit)
    int visits() const {
        int n = 1;
        for (const ActionEdge& e : edges) n += e.n;
        return n;
    }
    bool has_tried_edge() const {
        for (const ActionEdge& e : edges)
            if (e.n > 0) return true;
        return false;
    }
};

// Arena-backed tree with positional node identity: revisiting a state along a
// different path creates a distinct node, so a node's root path is unique and
// its looped flag is permanent.
class SearchTree {
public:
    SearchTree(StateVector root_state, int num_actions, size_t reserve_nodes = 0);

    NodeId root() const { return 0; }
    TreeNode& at(NodeId id) { return nodes_[static_cast<size_t>(id)]; }
    const TreeNode& at(NodeId id) const { return nodes_[static_cast<size_t>(id)]; }
    size_t size() const { return nodes_.size(); }
    int num_actions() const { return num_actions_; }

    // Creates the child node for (parent, action). Sets the terminal flag from
    // the outcome and sigma_tau per the leaf rule (0 if terminal else 1).
    NodeId expand(NodeId parent, int action, const StepOutcome& outcome);

    // One line per node, depth-first in action order:
    //   (state) t=<0|1> l=<0|1> s=<sigma> e=[a0: n=.. nt=.. q=..; ...]
    std::string dump() const;

private:
    void dump_node(NodeId id, int depth, std::string& out) const;

    std::vector<TreeNode> nodes_;
    int num_actions_;
};

struct TraceStep {
    NodeId node;
    int action;         // action actually taken at `node`
    int shadow_action;  // greedy-rule argmax at `node` (Eq. 11's target)
};

// Root-to-leaf path of one search iteration.
struct Trace {
    std::vector<TraceStep> steps;
    NodeId leaf = kNullNode;
    double leaf_value = 0.0;  // R(s_L): rollout return, stored value for terminal/looped leaves
};

struct SelectPick {
    int action;
    int shadow_action;
};

// argmax_a Q(s,a) + c * sqrt(n(s)) / n(s,a); untried edges have infinite
// priority; ties are broken uniformly from `rng`.
int select_action_vanilla(const SearchTree& tree, NodeId id, double c, Rng& rng);

// argmax_a Q(s,a) + c * sigma_tau(s') * sqrt(n(s)) / n(s,a); untried edges
// keep infinite priority with sigma prior 1; a child with sigma_tau = 0
// contributes no exploration bonus.
int select_action_sigma(const SearchTree& tree, NodeId id, double c, Rng& rng);

// Evaluates both rules at once. When the two argmax sets coincide, a single
// RNG draw decides both picks, so a run in which sigma never deviates from 1
// consumes the RNG stream exactly like the vanilla rule and the shadow counts
// track the real counts.
SelectPick select_action_sigma_with_shadow(const SearchTree& tree, NodeId id, double c, Rng& rng);

// Vanilla backup: R = leaf value, then leaf to root R = r + gamma * R with
// W += R, n += 1, Q = W / n on every trace edge.
void backup_trace_vanilla(SearchTree& tree, const Trace& trace, double gamma);

// Applies the recorded shadow picks: one n_tilde increment per trace step.
void update_shadow_counts(SearchTree& tree, const Trace& trace);

// Reweighted backup, leaf to root. For edge (s,a) with child s':
//   Q(s,a) = r(s,a) + gamma * sum_tried n~(s',a') Q(s',a') / sum_tried n~(s',a')
// or r(s,a) + gamma * leaf_value(s') when s' has no tried edges. n += 1 on
// every trace edge. Requires shadow counts for this trace already applied.
void backup_value_reweighted(SearchTree& tree, const Trace& trace, double gamma);

// Recomputes sigma_tau from leaf parent to root:
//   sigma_tau(s) = sum_a m(s,a) sigma*(s') / sum_a m(s,a),
// m = max(n,1); sigma* is the child's sigma for tried edges and 1 otherwise.
// Runs after the value backup so the counts include this trace.
void backup_sigma(SearchTree& tree, const Trace& trace);

}  // namespace treebench
