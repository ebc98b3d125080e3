#pragma once

#include "modk/graph.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace modk {

// Base-graph edges walked from `from` to `to`.
struct Trail {
    Vertex from = -1;
    Vertex to = -1;
    std::vector<EdgeId> edges;
};

struct LiftStep {
    Vertex pivot = -1;
    Edge first;
    Edge second;
    std::optional<Edge> created;  // empty when the pair was parallel
};

// Sequence of lifts applied to a base graph. Vertex numbering never changes;
// a fully split vertex stays isolated in derived().
class LiftLedger {
public:
    LiftLedger() = default;
    explicit LiftLedger(MultiGraph base);

    const MultiGraph& base() const { return base_; }
    const MultiGraph& derived() const { return derived_; }
    const std::vector<LiftStep>& steps() const { return steps_; }
    const std::vector<Trail>& closed_trails() const { return closed_; }
    const std::vector<EdgeId>& dropped() const { return dropped_; }
    const Trail& trail(EdgeId derived_edge) const;

    // Lifts derived edges a = xu and b = uy at `pivot`. Returns the new edge
    // id, or nullopt when x == y and both edges vanish.
    std::optional<EdgeId> lift(Vertex pivot, EdgeId a, EdgeId b, std::optional<EdgeId> forced_id = std::nullopt);
    // Removes a derived edge without lifting; its base edges become dropped.
    void drop(EdgeId derived_edge);

    MultiGraph replay() const;
    // Ledger over the trails of the chosen derived edges (plus, optionally, the
    // closed trails), rebuilt by replaying only the steps that feed them.
    LiftLedger restricted(const std::vector<EdgeId>& derived_edges, bool keep_closed) const;

private:
    MultiGraph base_;
    MultiGraph derived_;
    std::vector<LiftStep> steps_;
    std::vector<std::optional<Trail>> trails_;
    std::vector<Trail> closed_;
    std::vector<EdgeId> dropped_;
};

// Pivot is inferred unless the pair is parallel.
MultiGraph lift_pair(LiftLedger& ledger, EdgeId xu, EdgeId uy, std::optional<Vertex> pivot = std::nullopt);

struct LiftMode {
    enum class Kind { preserve_lambda, preserve_parity, preserve_size_parity };
    Kind kind = Kind::preserve_lambda;
    int a = 0;  // lambda, m or n
    int b = 0;  // m' or n'

    static LiftMode lambda(int l) { return {Kind::preserve_lambda, l, 0}; }
    static LiftMode parity(int m, int m_prime) { return {Kind::preserve_parity, m, m_prime}; }
    static LiftMode size_parity(int n, int n_prime) { return {Kind::preserve_size_parity, n, n_prime}; }
};

// First admissible pair in search order (fixed edge first, partners by
// ascending id). `allowed` restricts candidate pairs when given.
std::pair<EdgeId, EdgeId> find_admissible_lift(const MultiGraph& g, Vertex u, LiftMode mode,
                                               std::optional<EdgeId> fixed = std::nullopt,
                                               const std::vector<std::pair<EdgeId, EdgeId>>* allowed = nullptr);

// Applies `lift` of (a, b) at u to a copy of g, without a ledger.
MultiGraph lifted_copy(const MultiGraph& g, Vertex u, EdgeId a, EdgeId b);

struct SplitOff {
    MultiGraph graph;                // u removed, vertices renumbered, edge ids kept
    LiftLedger ledger;               // original numbering, u isolated in derived()
    std::vector<Vertex> vertex_map;  // original -> new, -1 for u
    std::vector<EdgeId> unlifted;    // edges at u discarded without lifting
    int lifts = 0;
};

SplitOff split_off_vertex(const MultiGraph& g, Vertex u, LiftMode mode);
SplitOff split_off_tree_connected(const MultiGraph& g, Vertex u, int m);

// Orientation of the base graph from one of the derived graph. Dropped base
// edges stay unset.
Orientation induce_orientation(const LiftLedger& ledger, const Orientation& derived);

}  // namespace modk
