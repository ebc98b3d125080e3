#pragma once

#include "modk/alpha.hpp"
#include "modk/graph.hpp"
#include "modk/lifting.hpp"
#include "modk/orientation.hpp"

#include <optional>
#include <string>
#include <vector>

namespace modk {

// Spanning subgraph given by edge ids, with its degree vector and a note on
// which bounds were checked.
struct FactorResult {
    std::vector<EdgeId> edges;
    std::vector<int> degrees;
    std::string certificate;
};

FactorResult make_factor(const MultiGraph& g, std::vector<EdgeId> edges, std::string certificate);
// d_H(v) = f(v) mod f.k at every vertex.
bool residues_hold(const FactorResult& h, const ResidueMap& f);

struct MixedParity {
    Orientation orientation;  // defined on the G1 edges only
    std::vector<EdgeId> f2;   // subset of G2
};

// Orients G1 and picks F2 inside G2 = E - G1 so that d+_{G1} + d_{F2} = h mod 2.
// Needs G connected and |G1| = sum h mod 2.
MixedParity mixed_parity_extension(const MultiGraph& g, const std::vector<EdgeId>& g1, const std::vector<int>& h);

// f-factor of the ledger's base with (d_G - d_L)/2 <= d_H <= (d_G + d_L)/2,
// where L = derived() is connected and spanning.
FactorResult trail_colored_factor(const LiftLedger& ledger, const std::vector<int>& f);

// m-tree-connected f-factor (mod 2) of a (2m+2)-edge-connected graph with
// floor(d/2) - m - 1 + s <= d_H <= ceil(d/2) + m + 1 + s, and
// d_H(z0) <= floor(d/2) + s(z0) when z0 is given.
FactorResult f_factor_mod2_bounded(const MultiGraph& g, const std::vector<int>& f, int m, const std::vector<int>& s,
                                   std::optional<Vertex> z0 = std::nullopt);

// Connected f-factor (mod 2) of a 4-edge-connected graph; s(v) = 1 iff d(v)
// is even and d(v)/2 - 2 = f(v) mod 2.
FactorResult connected_f_factor_mod2(const MultiGraph& g, const std::vector<int>& f);
// Connected even factor, i.e. f = 0.
FactorResult spanning_eulerian_subgraph(const MultiGraph& g);

// Bijection between orientations and factors of a bipartite graph: H holds
// the edges directed from side 0 to side 1.
std::vector<EdgeId> factor_from_orientation(const MultiGraph& g, const std::vector<int>& side, const Orientation& d);
Orientation orientation_from_factor(const MultiGraph& g, const std::vector<int>& side, const std::vector<EdgeId>& h);
// p = f on side 0 and d - f on side 1.
ResidueMap factor_to_orientation_residues(const MultiGraph& g, const std::vector<int>& side, const ResidueMap& f);
bool is_compatible(const MultiGraph& g, const std::vector<int>& side, const ResidueMap& f);

// f-factor with the regime's window: floor/ceil +- (k-1) for edge_3k3 and
// [k/2 - 1, d - k/2 + 1] for tree_2k2. The pin fixes d_H(z0).
FactorResult bipartite_f_factor(const MultiGraph& g, const ResidueMap& f, Regime regime,
                                std::optional<Vertex> z0 = std::nullopt, std::optional<int> z0_target = std::nullopt,
                                const HybridOptions& options = {});

struct Star {
    Vertex center = -1;
    std::vector<EdgeId> edges;
};

struct StarDecomposition {
    bool feasible = false;
    std::vector<Star> stars;
    bool counts_certified = false;  // every v centers floor or ceil of d/2k stars
    long long nodes = 0;
};

// k-star decomposition, equivalent to an orientation with every d+ = 0 mod k.
StarDecomposition star_decomposition(const MultiGraph& g, int k, long long node_budget = 0);
// Hypothesis under which the center counts are certified.
bool star_count_hypothesis(const MultiGraph& g, int k);

struct BalancedSplit {
    std::vector<EdgeId> g1;
    std::vector<EdgeId> g2;
    EdgeId xy = -1;  // in g1, both ends keep at least ceil(d/2)
};

// |G2| <= |G1| <= |G2| + 1 and ceil(d/2) - 1 <= d_{Gi} <= floor(d/2) + 1.
BalancedSplit balanced_split(const MultiGraph& g);

// Edges inside A or inside B whose removal from f makes it compatible across
// (A, B) mod k. side[v] = 0 for A, 1 for B.
std::vector<EdgeId> compatibility_factor(const MultiGraph& g, const std::vector<int>& side, const ResidueMap& f);

enum class BipartiteMode { edge, tree };

struct BipartiteFactor {
    std::vector<EdgeId> edges;
    std::vector<int> side;
    bool exhaustive = false;  // local search failed, found by enumeration
};

// m-edge-connected (edge mode) or m-tree-connected (tree mode) bipartite
// factor from a locally maximal cut.
BipartiteFactor bipartite_factor_mEC(const MultiGraph& g, int m, BipartiteMode mode);

struct NonBipartiteOptions {
    // Skips the connectivity precondition and window checks; residues only.
    bool smoke = false;
    long long node_budget = 0;
};

FactorResult nonbipartite_f_factor(const MultiGraph& g, const ResidueMap& f, const NonBipartiteOptions& options = {});

}  // namespace modk
