#include "treebench/tree.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace treebench {

SearchTree::SearchTree(StateVector root_state, int num_actions, size_t reserve_nodes)
    : num_actions_(num_actions) {
    if (num_actions < 1) throw ContractViolation("tree: num_actions must be >= 1");
    if (reserve_nodes) nodes_.reserve(reserve_nodes);
    TreeNode root;
    root.state = root_state;
    root.sigma_tau = 1.0;
    root.edges.resize(static_cast<size_t>(num_actions));
    nodes_.push_back(std::move(root));
}

NodeId SearchTree::expand(NodeId parent, int action, const StepOutcome& outcome) {
    if (action < 0 || action >= num_actions_) throw ContractViolation("expand: action out of range");
    ActionEdge& edge = nodes_[static_cast<size_t>(parent)].edges[static_cast<size_t>(action)];
    if (edge.child != kNullNode) throw ContractViolation("expand: edge already expanded");
    TreeNode node;
    node.state = outcome.next_state;
    node.terminal = outcome.terminal;
    node.sigma_tau = outcome.terminal ? 0.0 : 1.0;
    node.edges.resize(static_cast<size_t>(num_actions_));
    const NodeId id = static_cast<NodeId>(nodes_.size());
    nodes_.push_back(std::move(node));
    edge.child = id;
    edge.reward = outcome.reward;
    return id;
}

namespace {

void append_num(std::string& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    out += buf;
}

}  // namespace

void SearchTree::dump_node(NodeId id, int depth, std::string& out) const {
    const TreeNode& node = nodes_[static_cast<size_t>(id)];
    out.append(static_cast<size_t>(2 * depth), ' ');
    out += '(';
    for (int i = 0; i < node.state.size(); ++i) {
        if (i) out += ',';
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6g", node.state[i]);
        out += buf;
    }
    out += ") t=";
    out += node.terminal ? '1' : '0';
    out += " l=";
    out += node.looped ? '1' : '0';
    out += " s=";
    append_num(out, node.sigma_tau);
    out += " e=[";
    for (size_t a = 0; a < node.edges.size(); ++a) {
        const ActionEdge& e = node.edges[a];
        if (a) out += "; ";
        out += 'a';
        out += std::to_string(a);
        out += ": n=" + std::to_string(e.n);
        out += " nt=" + std::to_string(e.n_tilde);
        out += " q=";
        append_num(out, e.q);
    }
    out += "]\n";
    for (const ActionEdge& e : node.edges)
        if (e.child != kNullNode) dump_node(e.child, depth + 1, out);
}

std::string SearchTree::dump() const {
    std::string out;
    dump_node(root(), 0, out);
    return out;
}

// ---------------------------------------------------------------------------
// Selection

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Collects the argmax set of `score` over the node's edges into `best`.
template <typename ScoreFn>
void argmax_set(const TreeNode& node, ScoreFn score, std::vector<int>& best) {
    best.clear();
    double top = -kInf;
    for (int a = 0; a < static_cast<int>(node.edges.size()); ++a) {
        const double s = score(node.edges[static_cast<size_t>(a)]);
        if (s > top) {
            top = s;
            best.clear();
            best.push_back(a);
        } else if (s == top) {
            best.push_back(a);
        }
    }
}

int pick_from(const std::vector<int>& set, Rng& rng) {
    if (set.size() == 1) return set[0];
    return set[static_cast<size_t>(rng.uniform_int(static_cast<uint32_t>(set.size())))];
}

double vanilla_score(const ActionEdge& e, double c, double sqrt_n) {
    if (e.n == 0) return kInf;
    return e.q + c * sqrt_n / static_cast<double>(e.n);
}

double sigma_score(const SearchTree& tree, const ActionEdge& e, double c, double sqrt_n) {
    if (e.n == 0) return kInf;
    const double sigma = tree.at(e.child).sigma_tau;
    return e.q + c * sigma * sqrt_n / static_cast<double>(e.n);
}

}  // namespace

int select_action_vanilla(const SearchTree& tree, NodeId id, double c, Rng& rng) {
    const TreeNode& node = tree.at(id);
    const double sqrt_n = std::sqrt(static_cast<double>(node.visits()));
    std::vector<int> best;
    argmax_set(node, [&](const ActionEdge& e) { return vanilla_score(e, c, sqrt_n); }, best);
    return pick_from(best, rng);
}

int select_action_sigma(const SearchTree& tree, NodeId id, double c, Rng& rng) {
    const TreeNode& node = tree.at(id);
    const double sqrt_n = std::sqrt(static_cast<double>(node.visits()));
    std::vector<int> best;
    argmax_set(node, [&](const ActionEdge& e) { return sigma_score(tree, e, c, sqrt_n); }, best);
    return pick_from(best, rng);
}

SelectPick select_action_sigma_with_shadow(const SearchTree& tree, NodeId id, double c, Rng& rng) {
    const TreeNode& node = tree.at(id);
    const double sqrt_n = std::sqrt(static_cast<double>(node.visits()));
    std::vector<int> best_sigma, best_vanilla;
    argmax_set(node, [&](const ActionEdge& e) { return sigma_score(tree, e, c, sqrt_n); }, best_sigma);
    argmax_set(node, [&](const ActionEdge& e) { return vanilla_score(e, c, sqrt_n); }, best_vanilla);
    if (best_sigma == best_vanilla) {
        const int a = pick_from(best_sigma, rng);
        return {a, a};
    }
    const int a = pick_from(best_sigma, rng);
    const int shadow = pick_from(best_vanilla, rng);
    return {a, shadow};
}

// ---------------------------------------------------------------------------
// Backups

void backup_trace_vanilla(SearchTree& tree, const Trace& trace, double gamma) {
    double r = trace.leaf_value;
    for (auto it = trace.steps.rbegin(); it != trace.steps.rend(); ++it) {
        ActionEdge& e = tree.at(it->node).edges[static_cast<size_t>(it->action)];
        r = e.reward + gamma * r;
        e.w += r;
        e.n += 1;
        e.q = e.w / static_cast<double>(e.n);
    }
}

void update_shadow_counts(SearchTree& tree, const Trace& trace) {
    for (const TraceStep& step : trace.steps)
        tree.at(step.node).edges[static_cast<size_t>(step.shadow_action)].n_tilde += 1;
}

void backup_value_reweighted(SearchTree& tree, const Trace& trace, double gamma) {
    for (auto it = trace.steps.rbegin(); it != trace.steps.rend(); ++it) {
        ActionEdge& e = tree.at(it->node).edges[static_cast<size_t>(it->action)];
        const TreeNode& child = tree.at(e.child);
        double value;
        if (child.has_tried_edge()) {
            double num = 0.0;
            long den = 0;
            for (const ActionEdge& ce : child.edges) {
                if (ce.n > 0) {
                    num += static_cast<double>(ce.n_tilde) * ce.q;
                    den += ce.n_tilde;
                }
            }
            if (den <= 0) throw ContractViolation("reweighted backup: tried edges carry no shadow count");
            value = num / static_cast<double>(den);
        } else {
            value = (e.child == trace.leaf) ? trace.leaf_value : child.leaf_value;
        }
        e.q = e.reward + gamma * value;
        e.n += 1;
    }
}

void backup_sigma(SearchTree& tree, const Trace& trace) {
    for (auto it = trace.steps.rbegin(); it != trace.steps.rend(); ++it) {
        TreeNode& node = tree.at(it->node);
        double num = 0.0;
        long den = 0;
        for (const ActionEdge& e : node.edges) {
            const long m = std::max(e.n, 1);
            const double sigma_star = (e.n >= 1) ? tree.at(e.child).sigma_tau : 1.0;
            num += static_cast<double>(m) * sigma_star;
            den += m;
        }
        node.sigma_tau = num / static_cast<double>(den);
    }
}

}  // namespace treebench
