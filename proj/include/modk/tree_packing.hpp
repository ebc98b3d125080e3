#pragma once

#include "modk/graph.hpp"
#include "modk/lifting.hpp"

#include <optional>
#include <string>
#include <vector>

namespace modk {

struct Packing {
    std::vector<std::vector<EdgeId>> trees;
};

// Partition with sum of d(X_i) < 2m(t-1).
struct DeficientPartition {
    std::vector<VertexSet> parts;
    int boundary_sum = 0;
    int required = 0;
};

struct PackingResult {
    std::optional<Packing> packing;
    std::optional<DeficientPartition> deficiency;
};

// Matroid-union augmentation; returns exactly one of the two alternatives.
PackingResult spanning_tree_packing(const MultiGraph& g, int m);
bool is_tree_connected(const MultiGraph& g, int m);
bool verify_packing(const MultiGraph& g, const Packing& p, int m);
bool verify_deficiency(const MultiGraph& g, const DeficientPartition& d, int m);

struct CatlinFactor {
    Packing packing;
    std::optional<EdgeId> excluded;
};

// m spanning trees avoiding M, and avoiding one edge at z0 when z0 is given.
// When `e` is omitted an admissible edge at z0 is searched in id order.
CatlinFactor catlin_factor(const MultiGraph& g, int m, const std::vector<EdgeId>& avoid,
                           std::optional<Vertex> z0 = std::nullopt, std::optional<EdgeId> e = std::nullopt);

enum class BranchingKind { out, in };

struct Branching {
    Vertex root = -1;
    std::vector<EdgeId> edges;
};

struct BranchingSet {
    Orientation orientation;
    BranchingKind kind = BranchingKind::out;
    std::vector<Branching> branchings;
};

BranchingSet disjoint_branchings(const MultiGraph& g, const std::vector<int>& roots, BranchingKind kind,
                                 std::optional<Vertex> z0 = std::nullopt);

struct BranchingCheck {
    bool ok = true;
    std::string reason;
};

// Structure, root multiplicities, disjointness; degree caps when asked.
BranchingCheck verify_branchings(const MultiGraph& g, const BranchingSet& b, const std::vector<int>& roots,
                                 std::optional<Vertex> z0, bool check_caps);

// Undoes every step of the ledger, carrying orientation and branchings from
// the derived graph back to the base with the single-lift repair rules.
BranchingSet lift_back_branchings(const LiftLedger& ledger, const BranchingSet& derived);

// Vertex set (size >= 2) inducing an m-tree-connected subgraph; needs
// |E| >= m(n-1).
VertexSet tree_connected_subgraph(const MultiGraph& g, int m);

}  // namespace modk
