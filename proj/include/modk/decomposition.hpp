#pragma once

#include "modk/graph.hpp"
#include "modk/lifting.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace modk {

// Edge partition with a note per part on what was certified.
struct DecompositionResult {
    std::vector<std::vector<EdgeId>> parts;
    std::vector<std::string> certificates;
};

// Rule labels of the tour walk, in table order.
enum class TourRule { surplus_skip, surplus_take, alternate_skip, alternate_take, forced_take, forced_skip };
inline constexpr int kTourRules = 6;

struct RuleSplit {
    std::vector<EdgeId> g1;
    std::vector<EdgeId> g2;
    std::array<int, kTourRules> rule_hits{};
    bool swapped = false;  // F1 was empty, roles exchanged
};

// d+ - d+_{F2} - s2 <= d_{G1} <= d- + d+_{F1} + s1 and the mirror for G2.
bool rule_windows_hold(const MultiGraph& g, const Orientation& d, const std::vector<EdgeId>& f1,
                       const std::vector<EdgeId>& f2, const std::vector<int>& s1, const std::vector<int>& s2,
                       const std::vector<EdgeId>& g1, std::string* why = nullptr);

// Splits a connected directed graph into G1 >= F1 and G2 >= F2 by walking a
// directed Eulerian tour of G plus a balancing arc set.
RuleSplit eulerian_rule_decomposition(const MultiGraph& g, const Orientation& d, const std::vector<EdgeId>& f1,
                                      const std::vector<EdgeId>& f2, const std::vector<int>& s1,
                                      const std::vector<int>& s2);

// s1, s2 of the floor/ceil form: split the surplus d+ - d- in halves.
void half_surplus(const MultiGraph& g, const Orientation& d, std::vector<int>& s1, std::vector<int>& s2);

// Each G_i m_i-tree-connected with
// floor(d/2) - m2 + r2 <= d_{G1} <= ceil(d/2) + m1 - r1 (and the mirror).
DecompositionResult two_tree_connected_factors(const MultiGraph& g, int m1, int m2, const std::vector<int>& r1,
                                               const std::vector<int>& r2);

struct TreePlusLiftable {
    std::vector<EdgeId> m1;  // m1-tree-connected
    std::vector<EdgeId> m2;  // lifts to L
    LiftLedger ledger;       // base M2, derived L (m2-tree-connected)
};

// Windows: d_{M1} + (d_{M2} - d_L)/2 >= floor(d/2) - m1 - m2 + s and
// d_{M1} + (d_{M2} + d_L)/2 <= ceil(d/2) + m1 + m2 + s - r1 - r2, with the
// floor at z0.
TreePlusLiftable tree_plus_liftable_decomposition(const MultiGraph& g, int m1, int m2, const std::vector<int>& s,
                                                  const std::vector<int>& r1, const std::vector<int>& r2,
                                                  std::optional<Vertex> z0 = std::nullopt);

struct TreePlusTrees {
    std::vector<EdgeId> g1;  // m1-tree-connected
    std::vector<EdgeId> g2;  // m2 edge-disjoint spanning trees
    std::vector<std::vector<EdgeId>> trees;
};

TreePlusTrees tree_plus_trees_decomposition(const MultiGraph& g, int m1, int m2, const std::vector<int>& r1,
                                            const std::vector<int>& r2);

inline constexpr int kListFactorEdgeCap = 24;

// G1 >= F1, G2 >= F2 with d_{G_i}(v) in lists[v] for v in V_i (side[v] = 1 or
// 2). Orientation d drives the list-size check.
RuleSplit list_factor_decomposition(const MultiGraph& g, const Orientation& d, const std::vector<EdgeId>& f1,
                                    const std::vector<EdgeId>& f2, const std::vector<int>& side,
                                    const std::vector<std::vector<int>>& lists, const std::vector<int>& s1,
                                    const std::vector<int>& s2);

// Degree of every vertex in the edge subset.
std::vector<int> subset_degrees(const MultiGraph& g, const std::vector<EdgeId>& edges);
std::vector<int> subset_out_degrees(const MultiGraph& g, const Orientation& d, const std::vector<EdgeId>& edges);
std::vector<int> subset_in_degrees(const MultiGraph& g, const Orientation& d, const std::vector<EdgeId>& edges);
// Complement of `edges` within g, ascending ids.
std::vector<EdgeId> edge_complement(const MultiGraph& g, const std::vector<EdgeId>& edges);

}  // namespace modk
