#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace modk {

using Vertex = int;
using EdgeId = int;

// Raised when a routine with a proven existence guarantee fails to find
// its object. Under valid preconditions this means a bug.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline constexpr int kMaxVertices = 64;

struct Edge {
    EdgeId id = -1;
    Vertex u = -1;
    Vertex v = -1;

    Vertex other(Vertex x) const { return x == u ? v : u; }
    bool touches(Vertex x) const { return u == x || v == x; }
};

class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(std::uint64_t bits) : bits_(bits) {}
    VertexSet(std::initializer_list<Vertex> vs)
    {
        for (auto v : vs)
            insert(v);
    }

    static VertexSet full(int n) { return VertexSet(n >= 64 ? ~0ULL : ((1ULL << n) - 1)); }
    static VertexSet single(Vertex v) { return VertexSet(1ULL << v); }

    bool contains(Vertex v) const { return (bits_ >> v) & 1ULL; }
    void insert(Vertex v) { bits_ |= 1ULL << v; }
    void erase(Vertex v) { bits_ &= ~(1ULL << v); }
    int size() const { return std::popcount(bits_); }
    bool empty() const { return bits_ == 0; }
    std::uint64_t bits() const { return bits_; }
    VertexSet complement(int n) const { return VertexSet(full(n).bits_ & ~bits_); }
    std::vector<Vertex> members() const;
    std::string to_string() const;

    friend VertexSet operator|(VertexSet a, VertexSet b) { return VertexSet(a.bits_ | b.bits_); }
    friend VertexSet operator&(VertexSet a, VertexSet b) { return VertexSet(a.bits_ & b.bits_); }
    friend bool operator==(VertexSet a, VertexSet b) = default;

private:
    std::uint64_t bits_ = 0;
};

// Loopless multigraph. Edge ids are unique and survive deletion of other
// edges; derived graphs (contractions, subgraphs, lifts) keep the ids of the
// edges they inherit so certificates compose by id.
class MultiGraph {
public:
    MultiGraph() = default;
    explicit MultiGraph(int n);

    int vertex_count() const { return n_; }
    int edge_count() const { return live_; }
    EdgeId id_bound() const { return static_cast<EdgeId>(slots_.size()); }

    Vertex add_vertex();
    EdgeId add_edge(Vertex u, Vertex v);
    EdgeId add_edge_with_id(EdgeId id, Vertex u, Vertex v);
    void remove_edge(EdgeId id);

    bool has_edge(EdgeId id) const { return id >= 0 && id < id_bound() && alive_[id]; }
    const Edge& edge(EdgeId id) const;
    std::vector<Edge> edges() const;
    std::vector<EdgeId> edge_ids() const;

    int degree(Vertex v) const { return static_cast<int>(inc_.at(v).size()); }
    std::vector<int> degrees() const;
    int max_degree() const;
    int min_degree() const;
    const std::vector<EdgeId>& incident(Vertex v) const { return inc_.at(v); }
    std::vector<Vertex> neighbors(Vertex v) const;
    int multiplicity(Vertex a, Vertex b) const;

private:
    void check_vertex(Vertex v) const;

    int n_ = 0;
    int live_ = 0;
    std::vector<Edge> slots_;
    std::vector<char> alive_;
    std::vector<std::vector<EdgeId>> inc_;
};

enum class Dir : std::int8_t { none, forward, backward };

// Per-edge direction keyed by EdgeId. `forward` means stored u -> v.
class Orientation {
public:
    Orientation() = default;
    explicit Orientation(const MultiGraph& g) : dir_(g.id_bound(), Dir::none) {}

    Dir get(EdgeId e) const { return e < static_cast<EdgeId>(dir_.size()) ? dir_[e] : Dir::none; }
    void set(EdgeId e, Dir d);
    void direct(const MultiGraph& g, EdgeId e, Vertex tail);
    void clear(EdgeId e) { set(e, Dir::none); }
    bool is_set(EdgeId e) const { return get(e) != Dir::none; }

    Vertex tail(const MultiGraph& g, EdgeId e) const;
    Vertex head(const MultiGraph& g, EdgeId e) const;
    bool is_total(const MultiGraph& g) const;
    std::vector<int> out_degrees(const MultiGraph& g) const;
    std::vector<int> in_degrees(const MultiGraph& g) const;
    void reverse_all();

private:
    std::vector<Dir> dir_;
};

int boundary_degree(const MultiGraph& g, VertexSet a);
int internal_edges(const MultiGraph& g, VertexSet a);
int cross_edges(const MultiGraph& g, VertexSet a, VertexSet b);
std::vector<EdgeId> boundary_edges(const MultiGraph& g, VertexSet a);

struct Contraction {
    MultiGraph graph;
    std::vector<Vertex> vertex_map;  // old vertex -> new vertex
    Vertex merged = -1;
};

// Collapses A to one vertex placed at the position of min(A). Surviving edges
// keep their ids.
Contraction contract(const MultiGraph& g, VertexSet a);

struct Subgraph {
    MultiGraph graph;
    std::vector<Vertex> vertex_map;  // old -> new, -1 when dropped
    std::vector<Vertex> original;    // new -> old
};

Subgraph induced_subgraph(const MultiGraph& g, VertexSet a);
Subgraph remove_vertex(const MultiGraph& g, Vertex v);
MultiGraph edge_subgraph(const MultiGraph& g, const std::vector<EdgeId>& ids);

std::vector<int> components(const MultiGraph& g, int* count = nullptr);
bool is_connected(const MultiGraph& g);
bool is_connected_without(const MultiGraph& g, const std::vector<EdgeId>& removed);

// Closed tour of the component of `start`, ties by ascending EdgeId.
std::vector<EdgeId> eulerian_tour(const MultiGraph& g, Vertex start,
                                  std::optional<EdgeId> first_edge = std::nullopt);
// One closed tour per component that has edges.
std::vector<std::vector<EdgeId>> eulerian_tours(const MultiGraph& g);
// Directed closed tour following orientation `d`; needs d+ = d- everywhere.
std::vector<EdgeId> directed_eulerian_tour(const MultiGraph& g, const Orientation& d, Vertex start,
                                           std::optional<EdgeId> first_edge = std::nullopt);

// d+ in {floor(d/2), ceil(d/2)} everywhere via Eulerian tours over a
// parity-fixing completion. An odd-degree `pin` gets the ceiling when
// pin_ceil is set and the floor otherwise.
Orientation balanced_orientation(const MultiGraph& g, std::optional<Vertex> pin = std::nullopt,
                                 bool pin_ceil = false);

// Small named graphs used by tests, suites and the CLI.
MultiGraph cycle_graph(int n);
MultiGraph path_graph(int n);
MultiGraph complete_graph(int n);
MultiGraph complete_bipartite(int a, int b);
MultiGraph parallel_pair(int copies);
MultiGraph scaled(const MultiGraph& g, int factor);

}  // namespace modk
