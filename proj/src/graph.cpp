#include "modk/graph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace modk {

std::vector<Vertex> VertexSet::members() const
{
    std::vector<Vertex> out;
    for (auto b = bits_; b; b &= b - 1)
        out.push_back(std::countr_zero(b));
    return out;
}

std::string VertexSet::to_string() const
{
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (auto v : members()) {
        if (! first)
            os << ',';
        os << v;
        first = false;
    }
    os << '}';
    return os.str();
}

MultiGraph::MultiGraph(int n) : n_(n), inc_(n)
{
    if (n < 0 || n > kMaxVertices)
        throw std::invalid_argument("vertex count out of range");
}

void MultiGraph::check_vertex(Vertex v) const
{
    if (v < 0 || v >= n_)
        throw std::out_of_range("vertex " + std::to_string(v) + " out of range");
}

Vertex MultiGraph::add_vertex()
{
    if (n_ >= kMaxVertices)
        throw std::invalid_argument("vertex count out of range");
    inc_.emplace_back();
    return n_++;
}

EdgeId MultiGraph::add_edge(Vertex u, Vertex v)
{
    return add_edge_with_id(id_bound(), u, v);
}

EdgeId MultiGraph::add_edge_with_id(EdgeId id, Vertex u, Vertex v)
{
    check_vertex(u);
    check_vertex(v);
    if (u == v)
        throw std::invalid_argument("loops are not allowed");
    if (id < 0)
        throw std::invalid_argument("negative edge id");
    if (id < id_bound() && alive_[id])
        throw std::invalid_argument("edge id " + std::to_string(id) + " already in use");
    if (id >= id_bound()) {
        slots_.resize(id + 1);
        alive_.resize(id + 1, 0);
    }
    slots_[id] = Edge{id, u, v};
    alive_[id] = 1;
    ++live_;
    for (auto x : {u, v}) {
        auto& l = inc_[x];
        l.insert(std::upper_bound(l.begin(), l.end(), id), id);
    }
    return id;
}

void MultiGraph::remove_edge(EdgeId id)
{
    if (! has_edge(id))
        throw std::invalid_argument("no edge with id " + std::to_string(id));
    const auto& e = slots_[id];
    for (auto x : {e.u, e.v}) {
        auto& l = inc_[x];
        l.erase(std::lower_bound(l.begin(), l.end(), id));
    }
    alive_[id] = 0;
    --live_;
}

const Edge& MultiGraph::edge(EdgeId id) const
{
    if (! has_edge(id))
        throw std::invalid_argument("no edge with id " + std::to_string(id));
    return slots_[id];
}

std::vector<Edge> MultiGraph::edges() const
{
    std::vector<Edge> out;
    out.reserve(live_);
    for (EdgeId i = 0; i < id_bound(); ++i)
        if (alive_[i])
            out.push_back(slots_[i]);
    return out;
}

std::vector<EdgeId> MultiGraph::edge_ids() const
{
    std::vector<EdgeId> out;
    out.reserve(live_);
    for (EdgeId i = 0; i < id_bound(); ++i)
        if (alive_[i])
            out.push_back(i);
    return out;
}

std::vector<int> MultiGraph::degrees() const
{
    std::vector<int> d(n_);
    for (Vertex v = 0; v < n_; ++v)
        d[v] = degree(v);
    return d;
}

int MultiGraph::max_degree() const
{
    int best = 0;
    for (Vertex v = 0; v < n_; ++v)
        best = std::max(best, degree(v));
    return best;
}

int MultiGraph::min_degree() const
{
    if (n_ == 0)
        return 0;
    int best = degree(0);
    for (Vertex v = 1; v < n_; ++v)
        best = std::min(best, degree(v));
    return best;
}

std::vector<Vertex> MultiGraph::neighbors(Vertex v) const
{
    std::vector<Vertex> out;
    for (auto e : incident(v))
        out.push_back(slots_[e].other(v));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

int MultiGraph::multiplicity(Vertex a, Vertex b) const
{
    int c = 0;
    for (auto e : incident(a))
        if (slots_[e].other(a) == b)
            ++c;
    return c;
}

void Orientation::set(EdgeId e, Dir d)
{
    if (e < 0)
        throw std::invalid_argument("negative edge id");
    if (e >= static_cast<EdgeId>(dir_.size()))
        dir_.resize(e + 1, Dir::none);
    dir_[e] = d;
}

void Orientation::direct(const MultiGraph& g, EdgeId e, Vertex tail)
{
    const auto& ed = g.edge(e);
    if (tail == ed.u)
        set(e, Dir::forward);
    else if (tail == ed.v)
        set(e, Dir::backward);
    else
        throw std::invalid_argument("tail is not an endpoint");
}

Vertex Orientation::tail(const MultiGraph& g, EdgeId e) const
{
    const auto& ed = g.edge(e);
    switch (get(e)) {
    case Dir::forward: return ed.u;
    case Dir::backward: return ed.v;
    default: return -1;
    }
}

Vertex Orientation::head(const MultiGraph& g, EdgeId e) const
{
    const auto& ed = g.edge(e);
    switch (get(e)) {
    case Dir::forward: return ed.v;
    case Dir::backward: return ed.u;
    default: return -1;
    }
}

bool Orientation::is_total(const MultiGraph& g) const
{
    for (auto e : g.edge_ids())
        if (! is_set(e))
            return false;
    return true;
}

std::vector<int> Orientation::out_degrees(const MultiGraph& g) const
{
    std::vector<int> d(g.vertex_count(), 0);
    for (const auto& e : g.edges())
        if (auto t = tail(g, e.id); t >= 0)
            ++d[t];
    return d;
}

std::vector<int> Orientation::in_degrees(const MultiGraph& g) const
{
    std::vector<int> d(g.vertex_count(), 0);
    for (const auto& e : g.edges())
        if (auto h = head(g, e.id); h >= 0)
            ++d[h];
    return d;
}

void Orientation::reverse_all()
{
    for (auto& d : dir_)
        if (d == Dir::forward)
            d = Dir::backward;
        else if (d == Dir::backward)
            d = Dir::forward;
}

int boundary_degree(const MultiGraph& g, VertexSet a)
{
    int c = 0;
    for (const auto& e : g.edges())
        if (a.contains(e.u) != a.contains(e.v))
            ++c;
    return c;
}

int internal_edges(const MultiGraph& g, VertexSet a)
{
    int c = 0;
    for (const auto& e : g.edges())
        if (a.contains(e.u) && a.contains(e.v))
            ++c;
    return c;
}

int cross_edges(const MultiGraph& g, VertexSet a, VertexSet b)
{
    int c = 0;
    for (const auto& e : g.edges())
        if ((a.contains(e.u) && b.contains(e.v)) || (a.contains(e.v) && b.contains(e.u)))
            ++c;
    return c;
}

std::vector<EdgeId> boundary_edges(const MultiGraph& g, VertexSet a)
{
    std::vector<EdgeId> out;
    for (const auto& e : g.edges())
        if (a.contains(e.u) != a.contains(e.v))
            out.push_back(e.id);
    return out;
}

Contraction contract(const MultiGraph& g, VertexSet a)
{
    if (a.empty())
        throw std::invalid_argument("contract: empty vertex set");
    const int n = g.vertex_count();
    if ((a.bits() & ~VertexSet::full(n).bits()) != 0)
        throw std::invalid_argument("contract: set exceeds vertex range");
    Contraction c;
    c.vertex_map.assign(n, -1);
    int next = 0;
    for (Vertex v = 0; v < n; ++v) {
        if (a.contains(v)) {
            if (c.merged < 0)
                c.merged = next++;
            c.vertex_map[v] = c.merged;
        }
        else
            c.vertex_map[v] = next++;
    }
    c.graph = MultiGraph(next);
    for (const auto& e : g.edges()) {
        auto x = c.vertex_map[e.u], y = c.vertex_map[e.v];
        if (x != y)
            c.graph.add_edge_with_id(e.id, x, y);
    }
    return c;
}

Subgraph induced_subgraph(const MultiGraph& g, VertexSet a)
{
    Subgraph s;
    s.vertex_map.assign(g.vertex_count(), -1);
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (a.contains(v)) {
            s.vertex_map[v] = static_cast<Vertex>(s.original.size());
            s.original.push_back(v);
        }
    s.graph = MultiGraph(static_cast<int>(s.original.size()));
    for (const auto& e : g.edges())
        if (a.contains(e.u) && a.contains(e.v))
            s.graph.add_edge_with_id(e.id, s.vertex_map[e.u], s.vertex_map[e.v]);
    return s;
}

Subgraph remove_vertex(const MultiGraph& g, Vertex v)
{
    auto a = VertexSet::full(g.vertex_count());
    a.erase(v);
    return induced_subgraph(g, a);
}

MultiGraph edge_subgraph(const MultiGraph& g, const std::vector<EdgeId>& ids)
{
    MultiGraph h(g.vertex_count());
    for (auto id : ids) {
        const auto& e = g.edge(id);
        h.add_edge_with_id(id, e.u, e.v);
    }
    return h;
}

namespace {
    int find(std::vector<int>& p, int x)
    {
        while (p[x] != x)
            x = p[x] = p[p[x]];
        return x;
    }
}

std::vector<int> components(const MultiGraph& g, int* count)
{
    const int n = g.vertex_count();
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    for (const auto& e : g.edges())
        p[find(p, e.u)] = find(p, e.v);
    std::vector<int> label(n, -1), comp(n);
    int c = 0;
    for (Vertex v = 0; v < n; ++v) {
        auto r = find(p, v);
        if (label[r] < 0)
            label[r] = c++;
        comp[v] = label[r];
    }
    if (count)
        *count = c;
    return comp;
}

bool is_connected(const MultiGraph& g)
{
    int c = 0;
    components(g, &c);
    return c <= 1;
}

bool is_connected_without(const MultiGraph& g, const std::vector<EdgeId>& removed)
{
    const int n = g.vertex_count();
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    int parts = n;
    for (const auto& e : g.edges()) {
        if (std::find(removed.begin(), removed.end(), e.id) != removed.end())
            continue;
        auto a = find(p, e.u), b = find(p, e.v);
        if (a != b) {
            p[a] = b;
            --parts;
        }
    }
    return parts <= 1;
}

namespace {
    // Hierholzer with an explicit stack. `next_out(v, used)` yields the next
    // unused edge leaving v (lowest id first) or -1.
    template <typename NextOut, typename Far>
    std::vector<EdgeId> splice_tour(Vertex start, std::optional<EdgeId> first, NextOut next_out, Far far,
                                    std::vector<char>& used)
    {
        std::vector<std::pair<Vertex, EdgeId>> stack{{start, -1}};
        std::vector<EdgeId> rev;
        bool first_pending = first.has_value();
        while (! stack.empty()) {
            auto [v, via] = stack.back();
            EdgeId e = -1;
            if (first_pending) {
                e = *first;
                first_pending = false;
            }
            else
                e = next_out(v);
            if (e < 0) {
                if (via >= 0)
                    rev.push_back(via);
                stack.pop_back();
                continue;
            }
            used[e] = 1;
            stack.emplace_back(far(e, v), e);
        }
        std::reverse(rev.begin(), rev.end());
        return rev;
    }
}

std::vector<EdgeId> eulerian_tour(const MultiGraph& g, Vertex start, std::optional<EdgeId> first_edge)
{
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) % 2)
            throw std::invalid_argument("eulerian_tour: odd degree at vertex " + std::to_string(v));
    if (first_edge && ! g.edge(*first_edge).touches(start))
        throw std::invalid_argument("eulerian_tour: first edge not incident to start");
    std::vector<char> used(g.id_bound(), 0);
    std::vector<std::size_t> ptr(g.vertex_count(), 0);
    auto next_out = [&](Vertex v) -> EdgeId {
        const auto& l = g.incident(v);
        while (ptr[v] < l.size() && used[l[ptr[v]]])
            ++ptr[v];
        return ptr[v] < l.size() ? l[ptr[v]] : -1;
    };
    auto far = [&](EdgeId e, Vertex v) { return g.edge(e).other(v); };
    return splice_tour(start, first_edge, next_out, far, used);
}

std::vector<std::vector<EdgeId>> eulerian_tours(const MultiGraph& g)
{
    std::vector<std::vector<EdgeId>> out;
    int c = 0;
    auto comp = components(g, &c);
    std::vector<char> seen(c, 0);
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (! seen[comp[v]] && g.degree(v) > 0) {
            seen[comp[v]] = 1;
            out.push_back(eulerian_tour(g, v));
        }
    return out;
}

std::vector<EdgeId> directed_eulerian_tour(const MultiGraph& g, const Orientation& d, Vertex start,
                                           std::optional<EdgeId> first_edge)
{
    if (! d.is_total(g))
        throw std::invalid_argument("directed_eulerian_tour: orientation is partial");
    auto outd = d.out_degrees(g), ind = d.in_degrees(g);
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (outd[v] != ind[v])
            throw std::invalid_argument("directed_eulerian_tour: unbalanced vertex " + std::to_string(v));
    if (first_edge && d.tail(g, *first_edge) != start)
        throw std::invalid_argument("directed_eulerian_tour: first edge does not leave start");
    std::vector<char> used(g.id_bound(), 0);
    std::vector<std::size_t> ptr(g.vertex_count(), 0);
    auto next_out = [&](Vertex v) -> EdgeId {
        const auto& l = g.incident(v);
        while (ptr[v] < l.size() && (used[l[ptr[v]]] || d.tail(g, l[ptr[v]]) != v))
            ++ptr[v];
        return ptr[v] < l.size() ? l[ptr[v]] : -1;
    };
    auto far = [&](EdgeId e, Vertex) { return d.head(g, e); };
    auto tour = splice_tour(start, first_edge, next_out, far, used);
    if (static_cast<int>(tour.size()) != g.edge_count())
        throw std::invalid_argument("directed_eulerian_tour: edge set not weakly connected");
    return tour;
}

Orientation balanced_orientation(const MultiGraph& g, std::optional<Vertex> pin, bool pin_ceil)
{
    MultiGraph h = g;
    std::vector<Vertex> odd;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) % 2)
            odd.push_back(v);
    std::vector<EdgeId> virt(g.vertex_count(), -1);
    for (std::size_t i = 0; i + 1 < odd.size(); i += 2) {
        auto id = h.add_edge(odd[i], odd[i + 1]);
        virt[odd[i]] = virt[odd[i + 1]] = id;
    }
    Orientation o(h);
    int c = 0;
    auto comp = components(h, &c);
    std::vector<char> done(c, 0);
    for (Vertex v = 0; v < h.vertex_count(); ++v) {
        if (done[comp[v]] || h.degree(v) == 0)
            continue;
        done[comp[v]] = 1;
        auto tour = eulerian_tour(h, v);
        Vertex cur = v;
        for (auto e : tour) {
            o.direct(h, e, cur);
            cur = h.edge(e).other(cur);
        }
        if (pin && comp[*pin] == comp[v] && virt[*pin] >= 0) {
            // The virtual edge leaving the pin costs it one real out-edge.
            bool leaves = o.tail(h, virt[*pin]) == *pin;
            if (leaves == pin_ceil)
                for (auto e : tour)
                    o.set(e, o.get(e) == Dir::forward ? Dir::backward : Dir::forward);
        }
    }
    Orientation out(g);
    for (auto e : g.edge_ids())
        out.set(e, o.get(e));
    return out;
}

MultiGraph cycle_graph(int n)
{
    MultiGraph g(n);
    for (int i = 0; i < n; ++i)
        g.add_edge(i, (i + 1) % n);
    return g;
}

MultiGraph path_graph(int n)
{
    MultiGraph g(n);
    for (int i = 0; i + 1 < n; ++i)
        g.add_edge(i, i + 1);
    return g;
}

MultiGraph complete_graph(int n)
{
    MultiGraph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            g.add_edge(i, j);
    return g;
}

MultiGraph complete_bipartite(int a, int b)
{
    MultiGraph g(a + b);
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j)
            g.add_edge(i, a + j);
    return g;
}

MultiGraph parallel_pair(int copies)
{
    MultiGraph g(2);
    for (int i = 0; i < copies; ++i)
        g.add_edge(0, 1);
    return g;
}

MultiGraph scaled(const MultiGraph& g, int factor)
{
    if (factor < 1)
        throw std::invalid_argument("scaled: factor must be positive");
    MultiGraph h(g.vertex_count());
    for (const auto& e : g.edges())
        for (int i = 0; i < factor; ++i)
            h.add_edge(e.u, e.v);
    return h;
}

}  // namespace modk
