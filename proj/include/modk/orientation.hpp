#pragma once

#include "modk/alpha.hpp"
#include "modk/graph.hpp"

#include <optional>
#include <stdexcept>
#include <stop_token>
#include <string>
#include <vector>

namespace modk {

// Per-vertex bounds on d+. Every kind resolves to an integer window per
// vertex; the optional pin replaces the window at one vertex by one value.
struct BoundSpec {
    enum class Kind { interval, floor_ceil_offset, alpha_bound, tree_bound };
    Kind kind = Kind::floor_ceil_offset;
    std::vector<int> lo, hi;  // interval only
    int offset = 0;           // floor_ceil_offset only
    std::optional<Vertex> pin;
    int pin_value = 0;

    static BoundSpec interval(std::vector<int> lo, std::vector<int> hi);
    static BoundSpec uniform(int n, int lo, int hi);
    static BoundSpec floor_ceil_offset(int c);
    static BoundSpec alpha_bound();
    static BoundSpec tree_bound();
    BoundSpec pinned(Vertex v, int value) const;

    // Window clamped to [0, d(v)], before any pin.
    std::pair<int, int> raw_window(const MultiGraph& g, const ResidueMap& p, Vertex v) const;
    std::pair<int, int> window(const MultiGraph& g, const ResidueMap& p, Vertex v) const;
};

// Thrown when a search budget or a stop request ends a solver early.
class BudgetExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct OrientationCheck {
    bool ok = true;
    std::vector<std::string> violations;
};

OrientationCheck verify_orientation(const MultiGraph& g, const Orientation& d, const ResidueMap& p,
                                    const BoundSpec& bounds);

// Consequence forms: d+ in {d/2, d/2 +- k/2} (odd k) and d+ in {d/2 +- k}.
bool in_half_k_form(const MultiGraph& g, const Orientation& d, int k);
bool in_plus_minus_k_form(const MultiGraph& g, const Orientation& d, int k);

enum class SearchOutcome { found, infeasible, budget_exhausted };

struct SearchOptions {
    long long node_budget = 0;  // 0: unlimited
    std::stop_token stop;
    std::optional<Orientation> fixed;  // pre-oriented edges kept as given
};

struct SearchResult {
    SearchOutcome outcome = SearchOutcome::infeasible;
    Orientation orientation;
    long long nodes = 0;
};

// Exact backtracking decision: infeasible is a proof by exhaustion.
SearchResult orient_mod_k_search(const MultiGraph& g, const ResidueMap& p, const BoundSpec& bounds,
                                 const SearchOptions& options = {});

// Parity orientation with d+ = p mod 2, extending `fixed`. The free edges
// must form a connected spanning subgraph.
Orientation orient_mod2_connected(const MultiGraph& g, const std::vector<int>& parity, const Orientation& fixed);

// floor(d/2) - 1 <= d+ <= ceil(d/2) + 1 and d+ = p mod 2, on a 2-edge-connected
// graph; z0 hits z0_target when one is given.
Orientation orient_mod2_bounded(const MultiGraph& g, const ResidueMap& p, std::optional<Vertex> z0 = std::nullopt,
                                std::optional<int> z0_target = std::nullopt);

enum class Regime { edge_3k3, tree_2k2, odd_edge };

const char* regime_name(Regime r);
BoundSpec regime_bounds(Regime r);
// Interval used to validate a pin at v (the floor/ceil offset interval in
// the edge regimes).
std::pair<int, int> pin_interval(const MultiGraph& g, const ResidueMap& p, Regime r, Vertex v);
bool regime_precondition(const MultiGraph& g, const ResidueMap& p, Regime r);

struct HybridStats {
    int lifts = 0;
    int splits = 0;
    int contractions = 0;
    int searches = 0;
    int fallbacks = 0;
    long long nodes = 0;
};

struct HybridOptions {
    long long node_budget = 0;
    std::stop_token stop;
    bool check_precondition = true;
};

struct HybridResult {
    Orientation orientation;
    HybridStats stats;
};

HybridResult orient_mod_k_bounded(const MultiGraph& g, const ResidueMap& p, Regime regime,
                                  std::optional<Vertex> z0 = std::nullopt, std::optional<int> z0_target = std::nullopt,
                                  const HybridOptions& options = {});

}  // namespace modk
