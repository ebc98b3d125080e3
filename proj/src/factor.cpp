#include "modk/factor.hpp"

#include "modk/connectivity.hpp"
#include "modk/decomposition.hpp"
#include "modk/tree_packing.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace modk {

namespace {

int parity(int x) { return ((x % 2) + 2) % 2; }

void check_size(const MultiGraph& g, std::size_t size, const char* what)
{
    if (static_cast<int>(size) != g.vertex_count())
        throw std::invalid_argument(std::string(what) + ": size differs from vertex count");
}

std::vector<char> membership(const MultiGraph& g, const std::vector<EdgeId>& edges)
{
    std::vector<char> in(g.id_bound(), 0);
    for (auto e : edges) {
        if (!g.has_edge(e))
            throw std::invalid_argument("edge " + std::to_string(e) + " not in graph");
        in[e] = 1;
    }
    return in;
}

// BFS tree of a connected graph: parent edge per vertex and visiting order.
void bfs_tree(const MultiGraph& g, std::vector<EdgeId>& parent, std::vector<Vertex>& order)
{
    int n = g.vertex_count();
    parent.assign(n, -1);
    order.clear();
    std::vector<char> seen(n, 0);
    std::queue<Vertex> q;
    q.push(0);
    seen[0] = 1;
    while (!q.empty()) {
        Vertex v = q.front();
        q.pop();
        order.push_back(v);
        for (auto e : g.incident(v)) {
            Vertex w = g.edge(e).other(v);
            if (!seen[w]) {
                seen[w] = 1;
                parent[w] = e;
                q.push(w);
            }
        }
    }
}

}  // namespace

FactorResult make_factor(const MultiGraph& g, std::vector<EdgeId> edges, std::string certificate)
{
    std::sort(edges.begin(), edges.end());
    FactorResult r;
    r.degrees = subset_degrees(g, edges);
    r.edges = std::move(edges);
    r.certificate = std::move(certificate);
    return r;
}

bool residues_hold(const FactorResult& h, const ResidueMap& f)
{
    if (h.degrees.size() != f.values.size())
        return false;
    for (std::size_t v = 0; v < h.degrees.size(); ++v)
        if (residue(h.degrees[v], f.k) != f.values[v])
            return false;
    return true;
}

MixedParity mixed_parity_extension(const MultiGraph& g, const std::vector<EdgeId>& g1, const std::vector<int>& h)
{
    int n = g.vertex_count();
    check_size(g, h.size(), "mixed_parity_extension: h");
    if (n == 0 || !is_connected(g))
        throw std::invalid_argument("mixed_parity_extension: graph is not connected");
    auto in1 = membership(g, g1);
    int total = 0;
    for (int x : h)
        total += parity(x);
    if (parity(total) != parity(static_cast<int>(g1.size())))
        throw std::invalid_argument("mixed_parity_extension: |E(G1)| and sum of h differ mod 2");

    std::vector<EdgeId> parent;
    std::vector<Vertex> order;
    bfs_tree(g, parent, order);
    std::vector<char> tree(g.id_bound(), 0);
    for (auto e : parent)
        if (e >= 0)
            tree[e] = 1;

    MixedParity r;
    r.orientation = Orientation(g);
    std::vector<int> c(n, 0);
    // Off-tree G1 edges go u -> v; off-tree G2 edges stay out of F2.
    for (const auto& e : g.edges())
        if (!tree[e.id] && in1[e.id]) {
            r.orientation.direct(g, e.id, e.u);
            ++c[e.u];
        }
    // Leaves first: each tree edge settles the parity of its lower end.
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        Vertex x = *it;
        EdgeId e = parent[x];
        if (e < 0)
            continue;
        Vertex y = g.edge(e).other(x);
        bool wrong = parity(c[x]) != parity(h[x]);
        if (in1[e]) {
            Vertex tail = wrong ? x : y;
            r.orientation.direct(g, e, tail);
            ++c[tail];
        } else if (wrong) {
            r.f2.push_back(e);
            ++c[x];
            ++c[y];
        }
    }
    for (Vertex v = 0; v < n; ++v)
        if (parity(c[v]) != parity(h[v]))
            throw ContractViolation("mixed_parity_extension: parity fails at vertex " + std::to_string(v));
    std::sort(r.f2.begin(), r.f2.end());
    return r;
}

FactorResult trail_colored_factor(const LiftLedger& ledger, const std::vector<int>& f)
{
    const MultiGraph& g = ledger.base();
    const MultiGraph& l = ledger.derived();
    int n = g.vertex_count();
    check_size(g, f.size(), "trail_colored_factor: f");
    int total = 0;
    for (int x : f)
        total += parity(x);
    if (parity(total) != 0)
        throw std::invalid_argument("trail_colored_factor: sum of f is odd");
    if (!ledger.dropped().empty())
        throw std::invalid_argument("trail_colored_factor: ledger dropped edges");
    for (Vertex v = 0; v < n; ++v)
        if (l.degree(v) == 0)
            throw std::invalid_argument("trail_colored_factor: L does not span vertex " + std::to_string(v));
    if (!is_connected(l))
        throw std::invalid_argument("trail_colored_factor: L is not connected");

    // L1: trails of even size, L2: odd size; R: edges outside every trail.
    std::vector<char> on_trail(g.id_bound(), 0);
    std::vector<EdgeId> l1;
    for (auto e : l.edge_ids()) {
        const Trail& t = ledger.trail(e);
        for (auto b : t.edges)
            on_trail[b] = 1;
        if (t.edges.size() % 2 == 0)
            l1.push_back(e);
    }
    std::vector<EdgeId> r_edges;
    for (auto e : g.edge_ids())
        if (!on_trail[e])
            r_edges.push_back(e);
    MultiGraph rg = edge_subgraph(g, r_edges);
    int comps = 0;
    auto label = components(rg, &comps);
    std::vector<int> size(comps, 0);
    std::vector<Vertex> low(comps, -1);
    for (const auto& e : rg.edges())
        ++size[label[e.u]];
    for (Vertex v = n - 1; v >= 0; --v)
        if (rg.degree(v) > 0)
            low[label[v]] = v;
    std::vector<char> is_q(n, 0);
    for (int c = 0; c < comps; ++c)
        if (size[c] % 2 == 1)
            is_q[low[c]] = 1;

    std::vector<int> h(n);
    for (Vertex v = 0; v < n; ++v)
        h[v] = parity(f[v] - (g.degree(v) - l.degree(v)) / 2 - is_q[v]);
    auto mp = mixed_parity_extension(l, l1, h);
    auto in_f2 = membership(l, mp.f2);
    std::vector<int> reach(n, 0);  // d+_{L1} + d_{F2}
    for (auto e : l1)
        ++reach[mp.orientation.tail(l, e)];
    for (auto e : mp.f2) {
        ++reach[l.edge(e).u];
        ++reach[l.edge(e).v];
    }

    std::vector<EdgeId> blue;
    auto alternate = [&](const std::vector<EdgeId>& walk, bool first_blue) {
        bool b = first_blue;
        for (auto e : walk) {
            if (b)
                blue.push_back(e);
            b = !b;
        }
    };
    // Rules 1 and 2 on the components of R.
    for (int c = 0; c < comps; ++c) {
        if (size[c] == 0)
            continue;
        Vertex start = low[c];
        bool first_blue = size[c] % 2 == 0 || reach[start] == 0;
        alternate(eulerian_tour(rg, start), first_blue);
    }
    // Rules 3 and 4 on the trails.
    for (auto e : l.edge_ids()) {
        const Trail& t = ledger.trail(e);
        std::vector<EdgeId> walk = t.edges;
        if (t.edges.size() % 2 == 0) {
            if (mp.orientation.tail(l, e) != t.from)
                std::reverse(walk.begin(), walk.end());
            alternate(walk, true);
        } else {
            alternate(walk, in_f2[e] != 0);
        }
    }

    auto res = make_factor(g, blue, "f-factor mod 2, (d - d_L)/2 <= d_H <= (d + d_L)/2");
    for (Vertex v = 0; v < n; ++v) {
        int half = (g.degree(v) - l.degree(v)) / 2;
        int expect = reach[v] + half + (is_q[v] ? (reach[v] == 0 ? 1 : -1) : 0);
        if (res.degrees[v] != expect)
            throw ContractViolation("trail_colored_factor: degree identity fails at vertex " + std::to_string(v));
        if (parity(res.degrees[v]) != parity(f[v]) || res.degrees[v] < half ||
            res.degrees[v] > (g.degree(v) + l.degree(v)) / 2)
            throw ContractViolation("trail_colored_factor: window fails at vertex " + std::to_string(v));
    }
    return res;
}

FactorResult f_factor_mod2_bounded(const MultiGraph& g, const std::vector<int>& f, int m, const std::vector<int>& s,
                                   std::optional<Vertex> z0)
{
    int n = g.vertex_count();
    check_size(g, f.size(), "f_factor_mod2_bounded: f");
    check_size(g, s.size(), "f_factor_mod2_bounded: s");
    if (m < 0)
        throw std::invalid_argument("f_factor_mod2_bounded: m must be nonnegative");
    if (n < 2)
        throw std::invalid_argument("f_factor_mod2_bounded: need at least two vertices");
    if (z0 && (*z0 < 0 || *z0 >= n))
        throw std::invalid_argument("f_factor_mod2_bounded: z0 out of range");
    int total = 0;
    for (int x : f)
        total += parity(x);
    if (parity(total) != 0)
        throw std::invalid_argument("f_factor_mod2_bounded: sum of f is odd");
    Vertex root = z0.value_or(0);
    for (Vertex v = 0; v < n; ++v) {
        int cap = m + (v == root ? 1 : 0) + (z0 && v == *z0 && g.degree(v) % 2 ? 1 : 0);
        if (s[v] < 0 || s[v] > cap)
            throw std::invalid_argument("f_factor_mod2_bounded: s out of range at vertex " + std::to_string(v));
    }
    if (!is_lambda_edge_connected(g, 2 * m + 2))
        throw std::invalid_argument("f_factor_mod2_bounded: graph is not (2m+2)-edge-connected");

    std::vector<int> r1(n, 0), r2(n, 0);
    r1[root] = m;
    r2[root] = 1;
    auto dec = tree_plus_liftable_decomposition(g, m, 1, s, r1, r2, z0);
    auto dm1 = subset_degrees(g, dec.m1);
    std::vector<int> f2(n);
    for (Vertex v = 0; v < n; ++v)
        f2[v] = parity(f[v] - dm1[v]);
    auto part = trail_colored_factor(dec.ledger, f2);
    std::vector<EdgeId> h = dec.m1;
    h.insert(h.end(), part.edges.begin(), part.edges.end());
    auto res = make_factor(g, h, std::to_string(m) + "-tree-connected f-factor mod 2 within floor/ceil +- (m+1) + s");

    for (Vertex v = 0; v < n; ++v) {
        int d = g.degree(v), x = res.degrees[v];
        if (parity(x) != parity(f[v]))
            throw ContractViolation("f_factor_mod2_bounded: residue fails at vertex " + std::to_string(v));
        if (x < d / 2 - m - 1 + s[v] || x > (d + 1) / 2 + m + 1 + s[v])
            throw ContractViolation("f_factor_mod2_bounded: window fails at vertex " + std::to_string(v));
        if (z0 && v == *z0 && x > d / 2 + s[v])
            throw ContractViolation("f_factor_mod2_bounded: z0 bound fails");
    }
    if (!is_tree_connected(edge_subgraph(g, res.edges), m))
        throw ContractViolation("f_factor_mod2_bounded: factor is not m-tree-connected");
    return res;
}

FactorResult connected_f_factor_mod2(const MultiGraph& g, const std::vector<int>& f)
{
    check_size(g, f.size(), "connected_f_factor_mod2: f");
    std::vector<int> s(g.vertex_count(), 0);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        int d = g.degree(v);
        s[v] = d % 2 == 0 && parity(d / 2 - 2) == parity(f[v]) ? 1 : 0;
    }
    auto r = f_factor_mod2_bounded(g, f, 1, s);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        int d = g.degree(v), lo = d / 2 - (d % 2 ? 2 : 1), hi = (d + 1) / 2 + 2;
        if (r.degrees[v] < lo || r.degrees[v] > hi)
            throw ContractViolation("connected_f_factor_mod2: window fails at vertex " + std::to_string(v));
    }
    r.certificate = "connected f-factor mod 2, floor(d/2) - l(v) <= d_H <= ceil(d/2) + 2";
    return r;
}

FactorResult spanning_eulerian_subgraph(const MultiGraph& g)
{
    auto r = connected_f_factor_mod2(g, std::vector<int>(g.vertex_count(), 0));
    r.certificate = "connected even factor, floor(d/2) - l(v) <= d_H <= ceil(d/2) + 2";
    return r;
}

std::vector<EdgeId> factor_from_orientation(const MultiGraph& g, const std::vector<int>& side, const Orientation& d)
{
    check_size(g, side.size(), "factor_from_orientation: side");
    std::vector<EdgeId> h;
    for (const auto& e : g.edges()) {
        if (side[e.u] == side[e.v])
            throw std::invalid_argument("factor_from_orientation: edge inside one side");
        if (side[d.tail(g, e.id)] == 0)
            h.push_back(e.id);
    }
    return h;
}

Orientation orientation_from_factor(const MultiGraph& g, const std::vector<int>& side, const std::vector<EdgeId>& h)
{
    check_size(g, side.size(), "orientation_from_factor: side");
    auto in = membership(g, h);
    Orientation d(g);
    for (const auto& e : g.edges()) {
        if (side[e.u] == side[e.v])
            throw std::invalid_argument("orientation_from_factor: edge inside one side");
        Vertex a = side[e.u] == 0 ? e.u : e.v;
        d.direct(g, e.id, in[e.id] ? a : e.other(a));
    }
    return d;
}

ResidueMap factor_to_orientation_residues(const MultiGraph& g, const std::vector<int>& side, const ResidueMap& f)
{
    check_size(g, side.size(), "factor_to_orientation_residues: side");
    check_size(g, f.values.size(), "factor_to_orientation_residues: f");
    std::vector<int> p(g.vertex_count());
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        p[v] = side[v] == 0 ? f[v] : g.degree(v) - f[v];
    return ResidueMap(f.k, p);
}

bool is_compatible(const MultiGraph& g, const std::vector<int>& side, const ResidueMap& f)
{
    check_size(g, side.size(), "is_compatible: side");
    long long a = 0, b = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        (side[v] == 0 ? a : b) += f[v];
    return residue(a - b, f.k) == 0;
}

FactorResult bipartite_f_factor(const MultiGraph& g, const ResidueMap& f, Regime regime, std::optional<Vertex> z0,
                                std::optional<int> z0_target, const HybridOptions& options)
{
    check_size(g, f.values.size(), "bipartite_f_factor: f");
    if (regime == Regime::odd_edge)
        throw std::invalid_argument("bipartite_f_factor: regime must be edge_3k3 or tree_2k2");
    std::vector<int> side;
    if (!is_bipartite(g, &side))
        throw std::invalid_argument("bipartite_f_factor: graph is not bipartite");
    if (!is_compatible(g, side, f))
        throw std::invalid_argument("bipartite_f_factor: f is not compatible with the bipartition");
    if (z0_target && !z0)
        throw std::invalid_argument("bipartite_f_factor: target without z0");
    auto p = factor_to_orientation_residues(g, side, f);
    std::optional<int> out_target;
    if (z0_target)
        out_target = side[*z0] == 0 ? *z0_target : g.degree(*z0) - *z0_target;
    auto hr = orient_mod_k_bounded(g, p, regime, z0, out_target, options);
    auto res = make_factor(g, factor_from_orientation(g, side, hr.orientation), "");

    int k = f.k;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        int d = g.degree(v), x = res.degrees[v];
        bool ok = regime == Regime::edge_3k3 ? (x >= d / 2 - (k - 1) && x <= (d + 1) / 2 + (k - 1))
                                             : (2 * x >= k - 2 && 2 * x <= 2 * d - k + 2);
        if (residue(x, k) != f[v] || !ok)
            throw ContractViolation("bipartite_f_factor: window or residue fails at vertex " + std::to_string(v));
    }
    if (z0_target && res.degrees[*z0] != *z0_target)
        throw ContractViolation("bipartite_f_factor: pin missed");
    res.certificate = regime == Regime::edge_3k3 ? "f-factor, floor/ceil(d/2) +- (k-1)" : "f-factor, [k/2-1, d-k/2+1]";
    return res;
}

bool star_count_hypothesis(const MultiGraph& g, int k)
{
    if (k < 2 || g.vertex_count() < 2)
        return false;
    for (const auto& e : g.edges())
        if (g.multiplicity(e.u, e.v) > 1)
            return false;
    if (g.min_degree() < 2 * k - 1)
        return false;
    auto ess = essential_edge_connectivity(g);
    return !ess.value || *ess.value >= 3 * k - 3;
}

StarDecomposition star_decomposition(const MultiGraph& g, int k, long long node_budget)
{
    if (k < 1)
        throw std::invalid_argument("star_decomposition: k must be positive");
    if (g.edge_count() % k != 0)
        throw std::invalid_argument("star_decomposition: |E| is not divisible by k");
    StarDecomposition r;
    if (k == 1) {
        r.feasible = true;
        for (const auto& e : g.edges())
            r.stars.push_back({e.u, {e.id}});
        r.counts_certified = true;
        return r;
    }
    int n = g.vertex_count();
    auto p = ResidueMap::constant(k, n, 0);
    SearchOptions opt;
    opt.node_budget = node_budget;
    bool certify = star_count_hypothesis(g, k);
    SearchResult sr;
    if (certify) {
        sr = orient_mod_k_search(g, p, BoundSpec::alpha_bound(), opt);
        r.nodes += sr.nodes;
    }
    if (!certify || sr.outcome != SearchOutcome::found) {
        sr = orient_mod_k_search(g, p, BoundSpec::interval(std::vector<int>(n, 0), g.degrees()), opt);
        r.nodes += sr.nodes;
    }
    if (sr.outcome == SearchOutcome::budget_exhausted)
        throw BudgetExhausted("star_decomposition: node budget exhausted");
    if (sr.outcome == SearchOutcome::infeasible) {
        if (certify)
            throw ContractViolation("star_decomposition: no decomposition under the count hypothesis");
        return r;
    }
    r.feasible = true;
    std::vector<std::vector<EdgeId>> out(n);
    for (auto e : g.edge_ids())
        out[sr.orientation.tail(g, e)].push_back(e);
    bool counts = true;
    for (Vertex v = 0; v < n; ++v) {
        int d = g.degree(v), c = static_cast<int>(out[v].size()) / k;
        if (c != d / (2 * k) && c != (d + 2 * k - 1) / (2 * k))
            counts = false;
        for (std::size_t i = 0; i < out[v].size(); i += k)
            r.stars.push_back({v, std::vector<EdgeId>(out[v].begin() + i, out[v].begin() + i + k)});
    }
    if (certify && !counts)
        throw ContractViolation("star_decomposition: center counts outside floor/ceil of d/2k");
    r.counts_certified = counts && certify;
    return r;
}

namespace {

// Split of one connected edge set; returns blue minus red.
int split_component(const MultiGraph& g, const std::vector<EdgeId>& edges, std::vector<char>& blue, EdgeId& xy)
{
    MultiGraph c = edge_subgraph(g, edges);
    std::vector<Vertex> verts;
    for (Vertex v = 0; v < c.vertex_count(); ++v)
        if (c.degree(v) > 0)
            verts.push_back(v);
    if (verts.size() == 2) {
        for (std::size_t i = 0; i < edges.size(); ++i)
            blue[edges[i]] = i % 2 == 0;
        xy = edges.front();
        return static_cast<int>(edges.size() % 2);
    }

    // xy: a non-bridge edge, or the edge of a leaf.
    auto connected_without = [&](EdgeId e) {
        Vertex s = c.edge(e).u, t = c.edge(e).v;
        std::vector<char> seen(c.vertex_count(), 0);
        std::vector<Vertex> stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            for (auto f : c.incident(v)) {
                if (f == e)
                    continue;
                Vertex w = c.edge(f).other(v);
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
            }
        }
        return seen[t] != 0;
    };
    xy = -1;
    if (static_cast<int>(edges.size()) >= static_cast<int>(verts.size())) {
        for (auto e : edges)
            if (connected_without(e)) {
                xy = e;
                break;
            }
    } else {
        for (auto v : verts)
            if (c.degree(v) == 1) {
                xy = c.incident(v).front();
                break;
            }
    }
    Vertex x = c.edge(xy).u, y = c.edge(xy).v;
    c.remove_edge(xy);

    // Parity matching on the odd vertices, then an Euler tour.
    std::vector<Vertex> odd;
    for (auto v : verts)
        if (c.degree(v) % 2)
            odd.push_back(v);
    std::vector<EdgeId> matching_at(c.vertex_count(), -1);
    std::vector<char> virt;
    for (std::size_t i = 0; i + 1 < odd.size(); i += 2) {
        EdgeId m = c.add_edge(odd[i], odd[i + 1]);
        matching_at[odd[i]] = matching_at[odd[i + 1]] = m;
        if (static_cast<int>(virt.size()) < c.id_bound())
            virt.resize(c.id_bound(), 0);
        virt[m] = 1;
    }
    virt.resize(c.id_bound(), 0);
    Vertex u = -1;
    for (auto v : verts)
        if (v != x && v != y && c.degree(v) > 0) {
            u = v;
            break;
        }
    std::optional<EdgeId> first;
    if (matching_at[u] >= 0)
        first = matching_at[u];
    auto tour = eulerian_tour(c, u, first);
    bool is_blue = false;
    int diff = 0;
    for (auto e : tour) {
        if (virt[e])
            continue;
        blue[e] = is_blue;
        diff += is_blue ? 1 : -1;
        is_blue = !is_blue;
    }
    blue[xy] = 1;
    return diff + 1;
}

}  // namespace

BalancedSplit balanced_split(const MultiGraph& g)
{
    if (g.edge_count() == 0)
        throw std::invalid_argument("balanced_split: graph has no edges");
    int comps = 0;
    auto label = components(g, &comps);
    std::vector<std::vector<EdgeId>> by_comp(comps);
    for (const auto& e : g.edges())
        by_comp[label[e.u]].push_back(e.id);
    std::vector<char> blue(g.id_bound(), 0);
    BalancedSplit r;
    int balance = 0;
    for (const auto& edges : by_comp) {
        if (edges.empty())
            continue;
        EdgeId xy = -1;
        int diff = split_component(g, edges, blue, xy);
        if (r.xy < 0)
            r.xy = xy;
        // A second surplus component is swapped to keep the totals within one.
        if (diff != 0 && balance + diff > 1) {
            for (auto e : edges)
                blue[e] = !blue[e];
            diff = -diff;
        }
        balance += diff;
    }
    for (auto e : g.edge_ids())
        (blue[e] ? r.g1 : r.g2).push_back(e);

    int a = static_cast<int>(r.g1.size()), b = static_cast<int>(r.g2.size());
    if (a < b || a > b + 1)
        throw ContractViolation("balanced_split: edge counts differ by more than one");
    auto d1 = subset_degrees(g, r.g1), d2 = subset_degrees(g, r.g2);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        int d = g.degree(v);
        if (d == 0)
            continue;
        for (int x : {d1[v], d2[v]})
            if (x < (d + 1) / 2 - 1 || x > d / 2 + 1)
                throw ContractViolation("balanced_split: degree window fails at vertex " + std::to_string(v));
    }
    for (Vertex v : {g.edge(r.xy).u, g.edge(r.xy).v})
        if (d1[v] < (g.degree(v) + 1) / 2)
            throw ContractViolation("balanced_split: xy endpoint below ceil(d/2)");
    return r;
}

std::vector<EdgeId> compatibility_factor(const MultiGraph& g, const std::vector<int>& side, const ResidueMap& f)
{
    check_size(g, side.size(), "compatibility_factor: side");
    check_size(g, f.values.size(), "compatibility_factor: f");
    int k = f.k;
    if (k < 3)
        throw std::invalid_argument("compatibility_factor: k must be at least 3");
    std::vector<EdgeId> ea, eb;
    for (const auto& e : g.edges())
        if (side[e.u] == side[e.v])
            (side[e.u] == 0 ? ea : eb).push_back(e.id);
    int budget = k % 2 ? k - 1 : k / 2 - 1;
    if (static_cast<int>(ea.size() + eb.size()) < budget)
        throw std::invalid_argument("compatibility_factor: fewer than " + std::to_string(budget) + " internal edges");
    long long diff = 0, total = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        diff += side[v] == 0 ? f[v] : -f[v];
        total += f[v];
    }
    if (k % 2 == 0 && total % 2 != 0)
        throw std::invalid_argument("compatibility_factor: sum of f is odd for even k");
    // Only the counts inside A and inside B matter: sum_A - sum_B drops by
    // 2 per A-edge and rises by 2 per B-edge.
    int best_a = -1, best_b = -1;
    for (int total_m = 0; total_m <= static_cast<int>(ea.size() + eb.size()) && best_a < 0; ++total_m)
        for (int na = 0; na <= std::min<int>(total_m, static_cast<int>(ea.size())); ++na) {
            int nb = total_m - na;
            if (nb > static_cast<int>(eb.size()))
                continue;
            if (residue(diff - 2 * na + 2 * nb, k) == 0) {
                best_a = na;
                best_b = nb;
                break;
            }
        }
    if (best_a < 0)
        throw ContractViolation("compatibility_factor: no internal subset repairs f");
    std::vector<EdgeId> m(ea.begin(), ea.begin() + best_a);
    m.insert(m.end(), eb.begin(), eb.begin() + best_b);
    std::sort(m.begin(), m.end());
    return m;
}

namespace {

std::vector<EdgeId> cut_edges(const MultiGraph& g, const std::vector<int>& side)
{
    std::vector<EdgeId> out;
    for (const auto& e : g.edges())
        if (side[e.u] != side[e.v])
            out.push_back(e.id);
    return out;
}

// Flips single vertices while that enlarges the cut.
std::vector<int> local_max_cut(const MultiGraph& g)
{
    int n = g.vertex_count();
    std::vector<int> side(n);
    if (!is_bipartite(g, &side))
        for (Vertex v = 0; v < n; ++v)
            side[v] = v % 2;
    for (bool changed = true; changed;) {
        changed = false;
        for (Vertex v = 0; v < n; ++v) {
            int same = 0;
            for (auto e : g.incident(v))
                same += side[g.edge(e).other(v)] == side[v];
            if (2 * same > g.degree(v)) {
                side[v] ^= 1;
                changed = true;
            }
        }
    }
    return side;
}

std::vector<int> exhaustive_max_cut(const MultiGraph& g)
{
    int n = g.vertex_count();
    if (n > kExhaustiveGuard)
        throw ContractViolation("bipartite factor: too many vertices for exhaustive colouring");
    std::vector<int> best(n, 0), side(n, 0);
    int best_cut = -1;
    for (std::uint64_t mask = 0; mask < (1ULL << std::max(0, n - 1)); ++mask) {
        for (Vertex v = 0; v < n; ++v)
            side[v] = v == 0 ? 0 : static_cast<int>((mask >> (v - 1)) & 1);
        int c = static_cast<int>(cut_edges(g, side).size());
        if (c > best_cut) {
            best_cut = c;
            best = side;
        }
    }
    return best;
}

}  // namespace

BipartiteFactor bipartite_factor_mEC(const MultiGraph& g, int m, BipartiteMode mode)
{
    if (m < 1)
        throw std::invalid_argument("bipartite_factor_mEC: m must be positive");
    bool pre = mode == BipartiteMode::edge ? is_lambda_edge_connected(g, 2 * m - 1) : is_tree_connected(g, 2 * m);
    if (!pre)
        throw std::invalid_argument(mode == BipartiteMode::edge
                                        ? "bipartite_factor_mEC: graph is not (2m-1)-edge-connected"
                                        : "bipartite_factor_mEC: graph is not 2m-tree-connected");
    auto good = [&](const std::vector<EdgeId>& f) {
        MultiGraph h = edge_subgraph(g, f);
        return mode == BipartiteMode::edge ? is_lambda_edge_connected(h, m) : is_tree_connected(h, m);
    };
    BipartiteFactor r;
    r.side = local_max_cut(g);
    r.edges = cut_edges(g, r.side);
    if (!good(r.edges)) {
        r.side = exhaustive_max_cut(g);
        r.edges = cut_edges(g, r.side);
        r.exhaustive = true;
        if (!good(r.edges))
            throw ContractViolation("bipartite_factor_mEC: maximum cut fails the connectivity check");
    }
    return r;
}

FactorResult nonbipartite_f_factor(const MultiGraph& g, const ResidueMap& f, const NonBipartiteOptions& options)
{
    int n = g.vertex_count(), k = f.k;
    check_size(g, f.values.size(), "nonbipartite_f_factor: f");
    if (k < 3)
        throw std::invalid_argument("nonbipartite_f_factor: k must be at least 3");
    if (k % 2 == 0 && f.sum() % 2 != 0)
        throw std::invalid_argument("nonbipartite_f_factor: sum of f is odd for even k");
    if (is_bipartite(g))
        throw std::invalid_argument("nonbipartite_f_factor: graph is bipartite");
    const int xi = k % 2 ? k - 1 : k / 2 - 1;
    if (bipartite_index(g).bi < xi)
        throw std::invalid_argument("nonbipartite_f_factor: bipartite index below " + std::to_string(xi));
    if (!options.smoke && !is_lambda_edge_connected(g, 6 * k - 7))
        throw std::invalid_argument("nonbipartite_f_factor: graph is not (6k-7)-edge-connected");

    auto stage = [](const char* name, const std::exception& e) {
        return ContractViolation(std::string("nonbipartite_f_factor: stage ") + name + ": " + e.what());
    };

    // Stage 1: bipartite factor with the most edges.
    std::vector<int> side;
    std::vector<EdgeId> hb;
    try {
        if (options.smoke) {
            side = n <= kExhaustiveGuard ? exhaustive_max_cut(g) : local_max_cut(g);
            hb = cut_edges(g, side);
        } else {
            auto bf = bipartite_factor_mEC(g, 3 * k - 3, BipartiteMode::edge);
            side = bf.side;
            hb = bf.edges;
        }
    } catch (const std::exception& e) {
        throw stage("bipartite factor", e);
    }
    auto rest = edge_complement(g, hb);

    // Stage 2: F and the repair pool W.
    std::vector<EdgeId> fpart, pool;
    if (static_cast<int>(rest.size()) == xi) {
        pool = rest;
    } else {
        auto split = balanced_split(edge_subgraph(g, rest));
        std::vector<EdgeId> w1{split.xy};
        for (auto e : split.g1)
            if (static_cast<int>(w1.size()) < (xi + 1) / 2 && e != split.xy)
                w1.push_back(e);
        std::vector<EdgeId> w2(split.g2.begin(), split.g2.begin() + std::min<int>(xi / 2, split.g2.size()));
        auto in_w1 = membership(g, w1);
        for (auto e : split.g1)
            if (!in_w1[e])
                fpart.push_back(e);
        pool = w1;
        pool.insert(pool.end(), w2.begin(), w2.end());
        std::sort(pool.begin(), pool.end());
    }

    // Stage 3: M inside the pool making f - d_F - d_M compatible.
    auto dfp = subset_degrees(g, fpart);
    std::vector<int> f1(n);
    for (Vertex v = 0; v < n; ++v)
        f1[v] = f[v] - dfp[v];
    std::vector<EdgeId> mpart;
    try {
        mpart = compatibility_factor(edge_subgraph(g, pool), side, ResidueMap(k, f1));
    } catch (const std::exception& e) {
        throw stage("compatibility", e);
    }
    auto dm = subset_degrees(g, mpart);
    std::vector<int> f2(n);
    for (Vertex v = 0; v < n; ++v)
        f2[v] = f1[v] - dm[v];
    ResidueMap fr(k, f2);

    // Stage 4: f'-factor of the bipartite part.
    MultiGraph hg = edge_subgraph(g, hb);
    std::vector<EdgeId> hpart;
    try {
        if (options.smoke) {
            auto p = factor_to_orientation_residues(hg, side, fr);
            SearchOptions so;
            so.node_budget = options.node_budget;
            auto sr = orient_mod_k_search(hg, p, BoundSpec::interval(std::vector<int>(n, 0), hg.degrees()), so);
            if (sr.outcome == SearchOutcome::budget_exhausted)
                throw BudgetExhausted("search budget exhausted");
            if (sr.outcome != SearchOutcome::found)
                throw ContractViolation("no orientation with the shifted residues");
            hpart = factor_from_orientation(hg, side, sr.orientation);
        } else {
            HybridOptions ho;
            ho.node_budget = options.node_budget;
            hpart = bipartite_f_factor(hg, fr, Regime::edge_3k3, std::nullopt, std::nullopt, ho).edges;
        }
    } catch (const BudgetExhausted&) {
        throw;
    } catch (const std::exception& e) {
        throw stage("bipartite f-factor", e);
    }

    std::vector<EdgeId> h = hpart;
    h.insert(h.end(), fpart.begin(), fpart.end());
    h.insert(h.end(), mpart.begin(), mpart.end());
    auto res = make_factor(g, h, options.smoke ? "f-factor, residues only" : "f-factor with the index windows");
    if (!residues_hold(res, f))
        throw ContractViolation("nonbipartite_f_factor: residue fails");
    if (!options.smoke)
        for (Vertex v = 0; v < n; ++v) {
            int d = g.degree(v), x = res.degrees[v];
            bool ok = k % 2 ? (2 * x >= 2 * (d / 2) - 3 * k && 2 * x <= 2 * ((d + 1) / 2) + 3 * k)
                            : (4 * x >= 4 * (d / 2) - 5 * k + 1 && 4 * x <= 4 * ((d + 1) / 2) + 5 * k - 1);
            if (!ok)
                throw ContractViolation("nonbipartite_f_factor: window fails at vertex " + std::to_string(v));
        }
    return res;
}

}  // namespace modk
