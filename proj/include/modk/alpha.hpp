#pragma once

#include "modk/graph.hpp"

#include <string>
#include <vector>

namespace modk {

// Vertex -> residue in Z_k. Serves as both the orientation target p and the
// factor target f.
struct ResidueMap {
    int k = 1;
    std::vector<int> values;

    ResidueMap() = default;
    ResidueMap(int k, std::vector<int> v);
    static ResidueMap constant(int k, int n, int value);

    int operator[](Vertex v) const { return values.at(v); }
    int size() const { return static_cast<int>(values.size()); }
    int sum() const;
    // Sum of p(v) over v in V congruent to |E| mod k.
    bool matches_edge_count(const MultiGraph& g) const;
};

int residue(long long a, int k);

// alpha stored doubled: an integer in [-k, k]. Two values {-k, k} when the
// residue sits opposite d/2 on the circle.
struct AlphaValue {
    std::vector<int> twice;  // sorted, negative first

    bool ambiguous() const { return twice.size() == 2; }
    int abs_twice() const;
    std::string to_string() const;
};

// p(A) = sum of p over A minus e(A).
long long residue_sum(const MultiGraph& g, const ResidueMap& p, VertexSet a);
AlphaValue alpha_of_set(const MultiGraph& g, const ResidueMap& p, VertexSet a);
AlphaValue alpha_of_vertex(const MultiGraph& g, const ResidueMap& p, Vertex v);

struct AlphaReport {
    bool ok = true;
    long long checks = 0;
    std::vector<std::string> failures;  // property id plus counterexample sets
};

// Exhaustive over subsets (and pairs) of V: the six structural properties,
// plus lifting invariance over every lift at every vertex when asked.
AlphaReport check_alpha_properties(const MultiGraph& g, const ResidueMap& p, bool with_lifts = true);

// |alpha'(A)| = |alpha(A)| for all A after lifting (a, b) at u, with p' taken
// one lower at u, and also at x when the pair is parallel.
AlphaReport check_lift_invariance(const MultiGraph& g, const ResidueMap& p, Vertex u, EdgeId a, EdgeId b);

}  // namespace modk
