#pragma once

// Structural tree equality for the vanilla-agreement checks. Shadow counts
// are excluded: the vanilla backup never maintains them.

#include <string>

#include "treebench/tree.hpp"

namespace treebench::testenv {

inline bool nodes_equal(const SearchTree& a, const SearchTree& b, NodeId ia, NodeId ib, std::string* why) {
    const TreeNode& na = a.at(ia);
    const TreeNode& nb = b.at(ib);
    auto mismatch = [&](const char* what) {
        if (why) *why = std::string(what) + " at node " + std::to_string(ia);
        return false;
    };
    if (na.state != nb.state) return mismatch("state");
    if (na.terminal != nb.terminal) return mismatch("terminal flag");
    if (na.looped != nb.looped) return mismatch("looped flag");
    if (na.sigma_tau != nb.sigma_tau) return mismatch("sigma");
    if (na.leaf_value != nb.leaf_value) return mismatch("leaf value");
    if (na.edges.size() != nb.edges.size()) return mismatch("edge count");
    for (size_t i = 0; i < na.edges.size(); ++i) {
        const ActionEdge& ea = na.edges[i];
        const ActionEdge& eb = nb.edges[i];
        if (ea.n != eb.n) return mismatch("edge visit count");
        if (ea.q != eb.q) return mismatch("edge value");
        if (ea.reward != eb.reward) return mismatch("edge reward");
        if ((ea.child == kNullNode) != (eb.child == kNullNode)) return mismatch("edge expansion");
        if (ea.child != kNullNode && !nodes_equal(a, b, ea.child, eb.child, why)) return false;
    }
    return true;
}

inline bool trees_equal_modulo_shadow(const SearchTree& a, const SearchTree& b, std::string* why = nullptr) {
    if (a.size() != b.size()) {
        if (why) *why = "node counts differ";
        return false;
    }
    return nodes_equal(a, b, a.root(), b.root(), why);
}

}  // namespace treebench::testenv
