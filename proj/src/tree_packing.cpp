#include "modk/tree_packing.hpp"

#include "modk/connectivity.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <stdexcept>

namespace modk {

namespace {
    // Forest over the host's vertex range with path queries.
    struct Forest {
        int n;
        std::vector<std::vector<std::pair<Vertex, EdgeId>>> adj;
        int size = 0;

        explicit Forest(int n) : n(n), adj(n) {}

        void add(const Edge& e)
        {
            adj[e.u].emplace_back(e.v, e.id);
            adj[e.v].emplace_back(e.u, e.id);
            ++size;
        }

        void remove(const Edge& e)
        {
            for (auto x : {e.u, e.v}) {
                auto& l = adj[x];
                l.erase(std::find_if(l.begin(), l.end(), [&](auto& p) { return p.second == e.id; }));
            }
            --size;
        }

        // Edge ids on the forest path a..b, or nullopt when disconnected.
        std::optional<std::vector<EdgeId>> path(Vertex a, Vertex b) const
        {
            std::vector<EdgeId> via(n, -1);
            std::vector<Vertex> from(n, -1);
            std::vector<char> seen(n, 0);
            std::deque<Vertex> q{a};
            seen[a] = 1;
            while (! q.empty()) {
                auto x = q.front();
                q.pop_front();
                if (x == b)
                    break;
                for (auto [y, id] : adj[x])
                    if (! seen[y]) {
                        seen[y] = 1;
                        via[y] = id;
                        from[y] = x;
                        q.push_back(y);
                    }
            }
            if (! seen[b])
                return std::nullopt;
            std::vector<EdgeId> out;
            for (auto x = b; x != a; x = from[x])
                out.push_back(via[x]);
            return out;
        }
    };

    struct Union {
        const MultiGraph& g;
        int m;
        std::vector<Forest> forests;
        std::vector<int> which;  // forest index per edge id, -1 when unassigned

        Union(const MultiGraph& g, int m) : g(g), m(m), forests(m, Forest(g.vertex_count())), which(g.id_bound(), -1)
        {
        }

        // BFS over exchange labels from `sources`; augments on success.
        // On failure fills `labelled`.
        bool augment(const std::vector<EdgeId>& sources, std::vector<char>* labelled)
        {
            std::vector<int> parent(g.id_bound(), -2);
            std::vector<int> into(g.id_bound(), -1);
            std::deque<EdgeId> q;
            for (auto s : sources) {
                parent[s] = -1;
                q.push_back(s);
            }
            while (! q.empty()) {
                auto f = q.front();
                q.pop_front();
                const auto& ef = g.edge(f);
                for (int i = 0; i < m; ++i) {
                    if (which[f] == i)
                        continue;
                    auto p = forests[i].path(ef.u, ef.v);
                    if (! p) {
                        apply(f, i, parent, into);
                        return true;
                    }
                    for (auto h : *p)
                        if (parent[h] == -2) {
                            parent[h] = f;
                            into[h] = i;  // h leaves forest i so that its parent can enter
                            q.push_back(h);
                        }
                }
            }
            if (labelled) {
                labelled->assign(g.id_bound(), 0);
                for (EdgeId e = 0; e < g.id_bound(); ++e)
                    if (parent[e] != -2)
                        (*labelled)[e] = 1;
            }
            return false;
        }

        void apply(EdgeId f, int target, const std::vector<int>& parent, const std::vector<int>& into)
        {
            // f enters `target`; each predecessor enters the forest f left.
            EdgeId cur = f;
            int dest = target;
            while (true) {
                int old = which[cur];
                if (old >= 0)
                    forests[old].remove(g.edge(cur));
                forests[dest].add(g.edge(cur));
                which[cur] = dest;
                EdgeId par = parent[cur];
                if (par < 0)
                    break;
                dest = into[cur];
                cur = par;
            }
        }
    };
}

PackingResult spanning_tree_packing(const MultiGraph& g, int m)
{
    if (m < 0)
        throw std::invalid_argument("spanning_tree_packing: negative m");
    const int n = g.vertex_count();
    PackingResult r;
    if (m == 0 || n <= 1) {
        r.packing = Packing{std::vector<std::vector<EdgeId>>(m)};
        return r;
    }
    Union u(g, m);
    const int target = m * (n - 1);
    int placed = 0;
    for (auto e : g.edge_ids()) {
        if (placed == target)
            break;
        if (u.augment({e}, nullptr))
            ++placed;
    }
    if (placed == target) {
        Packing p;
        p.trees.resize(m);
        for (auto e : g.edge_ids())
            if (u.which[e] >= 0)
                p.trees[u.which[e]].push_back(e);
        r.packing = std::move(p);
        return r;
    }
    std::vector<EdgeId> loose;
    for (auto e : g.edge_ids())
        if (u.which[e] < 0)
            loose.push_back(e);
    std::vector<char> labelled(g.id_bound(), 0);
    if (! loose.empty() && u.augment(loose, &labelled))
        throw ContractViolation("spanning_tree_packing: late augmentation succeeded");
    MultiGraph span(n);
    for (auto e : g.edge_ids())
        if (labelled[e]) {
            const auto& ed = g.edge(e);
            span.add_edge_with_id(e, ed.u, ed.v);
        }
    int t = 0;
    auto comp = components(span, &t);
    DeficientPartition d;
    d.parts.resize(t);
    for (Vertex v = 0; v < n; ++v)
        d.parts[comp[v]].insert(v);
    for (const auto& x : d.parts)
        d.boundary_sum += boundary_degree(g, x);
    d.required = 2 * m * (t - 1);
    if (d.boundary_sum >= d.required)
        throw ContractViolation("spanning_tree_packing: certificate is not deficient");
    r.deficiency = std::move(d);
    return r;
}

bool is_tree_connected(const MultiGraph& g, int m)
{
    return spanning_tree_packing(g, m).packing.has_value();
}

bool verify_packing(const MultiGraph& g, const Packing& p, int m)
{
    const int n = g.vertex_count();
    if (static_cast<int>(p.trees.size()) != m)
        return false;
    std::vector<char> used(g.id_bound(), 0);
    for (const auto& t : p.trees) {
        if (n >= 1 && static_cast<int>(t.size()) != n - 1)
            return false;
        for (auto e : t) {
            if (! g.has_edge(e) || used[e])
                return false;
            used[e] = 1;
        }
        if (! is_connected(edge_subgraph(g, t)))
            return false;
    }
    return true;
}

bool verify_deficiency(const MultiGraph& g, const DeficientPartition& d, int m)
{
    VertexSet all;
    for (const auto& x : d.parts) {
        if (x.empty() || ! (x & all).empty())
            return false;
        all = all | x;
    }
    if (all != VertexSet::full(g.vertex_count()))
        return false;
    int sum = 0;
    for (const auto& x : d.parts)
        sum += boundary_degree(g, x);
    return sum < 2 * m * (static_cast<int>(d.parts.size()) - 1);
}

CatlinFactor catlin_factor(const MultiGraph& g, int m, const std::vector<EdgeId>& avoid, std::optional<Vertex> z0,
                           std::optional<EdgeId> e)
{
    if (m < 0)
        throw std::invalid_argument("catlin_factor: negative m");
    if (static_cast<int>(avoid.size()) != m)
        throw std::invalid_argument("catlin_factor: |M| must equal m");
    if (g.vertex_count() < 2)
        throw std::invalid_argument("catlin_factor: need at least two vertices");
    if (! is_lambda_edge_connected(g, 2 * m))
        throw std::invalid_argument("catlin_factor: graph is not 2m-edge-connected");
    MultiGraph h = g;
    for (auto id : avoid) {
        if (! h.has_edge(id))
            throw std::invalid_argument("catlin_factor: M has a repeated or unknown edge");
        h.remove_edge(id);
    }
    bool odd_z0 = z0 && g.degree(*z0) % 2 == 1;
    if (e && ! odd_z0)
        throw std::invalid_argument("catlin_factor: an excluded edge needs an odd-degree z0");
    CatlinFactor out;
    if (! odd_z0) {
        auto r = spanning_tree_packing(h, m);
        if (! r.packing)
            throw ContractViolation("catlin_factor: no packing outside M");
        out.packing = std::move(*r.packing);
        return out;
    }
    std::vector<EdgeId> candidates;
    if (e) {
        if (! h.has_edge(*e) || ! h.edge(*e).touches(*z0))
            throw std::invalid_argument("catlin_factor: excluded edge must lie at z0 outside M");
        candidates.push_back(*e);
    }
    else
        candidates = h.incident(*z0);
    for (auto c : candidates) {
        MultiGraph k = h;
        k.remove_edge(c);
        auto r = spanning_tree_packing(k, m);
        if (r.packing) {
            out.packing = std::move(*r.packing);
            out.excluded = c;
            return out;
        }
    }
    bool arbitrary = g.degree(*z0) == 2 * m + 1
                     && std::all_of(avoid.begin(), avoid.end(), [&](EdgeId id) { return g.edge(id).touches(*z0); });
    if (e && ! arbitrary)
        throw std::domain_error("catlin_factor: the given edge at z0 is not excludable");
    throw ContractViolation("catlin_factor: no excludable edge at z0");
}

namespace {
    std::vector<Vertex> root_list(const std::vector<int>& r)
    {
        std::vector<Vertex> out;
        for (Vertex v = 0; v < static_cast<Vertex>(r.size()); ++v)
            for (int i = 0; i < r[v]; ++i)
                out.push_back(v);
        return out;
    }

    // Out-branchings with the degree caps, following the lift-then-base
    // construction.
    BranchingSet out_branchings(const MultiGraph& g, const std::vector<int>& r, std::optional<Vertex> z0)
    {
        const int n = g.vertex_count();
        const int m = std::accumulate(r.begin(), r.end(), 0);
        LiftLedger ledger(g);
        bool progress = true;
        while (progress) {
            progress = false;
            for (Vertex v = 0; v < n; ++v)
                if (ledger.derived().degree(v) >= 2 * m + 2) {
                    auto [a, b] = find_admissible_lift(ledger.derived(), v, LiftMode::lambda(2 * m));
                    ledger.lift(v, a, b);
                    progress = true;
                }
        }
        const MultiGraph& h = ledger.derived();

        // M with d-_M(v) = r(v), directed into v.
        Orientation o(h);
        std::vector<EdgeId> avoid;
        std::vector<char> used(h.id_bound(), 0);
        for (Vertex v = 0; v < n; ++v)
            for (int i = 0; i < r[v]; ++i) {
                EdgeId pick = -1;
                for (auto e : h.incident(v))
                    if (! used[e]) {
                        pick = e;
                        break;
                    }
                if (pick < 0)
                    throw ContractViolation("disjoint_branchings: no free edge for the root factor");
                used[pick] = 1;
                avoid.push_back(pick);
                o.direct(h, pick, h.edge(pick).other(v));
            }
        auto cat = catlin_factor(h, m, avoid, z0 && h.degree(*z0) % 2 ? z0 : std::nullopt);
        if (cat.excluded) {
            o.direct(h, *cat.excluded, h.edge(*cat.excluded).other(*z0));
            used[*cat.excluded] = 1;
        }
        BranchingSet out;
        out.kind = BranchingKind::out;
        auto roots = root_list(r);
        for (int i = 0; i < m; ++i) {
            const auto& tree = cat.packing.trees[i];
            MultiGraph t = edge_subgraph(h, tree);
            std::vector<char> seen(n, 0);
            std::deque<Vertex> q{roots[i]};
            seen[roots[i]] = 1;
            while (! q.empty()) {
                auto x = q.front();
                q.pop_front();
                for (auto e : t.incident(x)) {
                    auto y = t.edge(e).other(x);
                    if (! seen[y]) {
                        seen[y] = 1;
                        o.direct(h, e, x);
                        q.push_back(y);
                    }
                }
            }
            for (auto e : tree)
                used[e] = 1;
            out.branchings.push_back(Branching{roots[i], tree});
        }
        for (auto e : h.edge_ids())
            if (! used[e])
                o.set(e, Dir::forward);
        out.orientation = o;
        return lift_back_branchings(ledger, out);
    }
}

BranchingSet disjoint_branchings(const MultiGraph& g, const std::vector<int>& roots, BranchingKind kind,
                                 std::optional<Vertex> z0)
{
    const int n = g.vertex_count();
    if (static_cast<int>(roots.size()) != n)
        throw std::invalid_argument("disjoint_branchings: root map size mismatch");
    for (auto x : roots)
        if (x < 0)
            throw std::invalid_argument("disjoint_branchings: negative root multiplicity");
    const int m = std::accumulate(roots.begin(), roots.end(), 0);
    BranchingSet out;
    out.kind = kind;
    if (m == 0) {
        // Balanced orientation; an odd z0 takes the smaller half of its
        // out-degree (or in-degree for the in case).
        out.orientation = balanced_orientation(g, z0, kind == BranchingKind::in);
        return out;
    }
    if (n == 1) {
        out.orientation = Orientation(g);
        for (auto v : root_list(roots))
            out.branchings.push_back(Branching{v, {}});
        return out;
    }
    if (! is_lambda_edge_connected(g, 2 * m))
        throw std::invalid_argument("disjoint_branchings: graph is not 2m-edge-connected");
    out = out_branchings(g, roots, z0);
    if (kind == BranchingKind::in) {
        out.orientation.reverse_all();
        out.kind = BranchingKind::in;
    }
    auto check = verify_branchings(g, out, roots, z0, true);
    if (! check.ok)
        throw ContractViolation("disjoint_branchings: " + check.reason);
    return out;
}

BranchingCheck verify_branchings(const MultiGraph& g, const BranchingSet& b, const std::vector<int>& roots,
                                 std::optional<Vertex> z0, bool check_caps)
{
    const int n = g.vertex_count();
    auto fail = [](std::string why) { return BranchingCheck{false, std::move(why)}; };
    if (! b.orientation.is_total(g))
        return fail("orientation is partial");
    std::vector<int> seen_roots(n, 0);
    std::vector<char> used(g.id_bound(), 0);
    for (const auto& br : b.branchings) {
        if (br.root < 0 || br.root >= n)
            return fail("root out of range");
        ++seen_roots[br.root];
        if (static_cast<int>(br.edges.size()) != n - 1)
            return fail("branching has wrong size");
        // Entering (out case) or leaving (in case) edges per vertex.
        std::vector<int> count(n, 0);
        for (auto e : br.edges) {
            if (! g.has_edge(e) || used[e])
                return fail("branchings are not edge-disjoint");
            used[e] = 1;
            auto v = b.kind == BranchingKind::out ? b.orientation.head(g, e) : b.orientation.tail(g, e);
            ++count[v];
        }
        for (Vertex v = 0; v < n; ++v)
            if (count[v] != (v == br.root ? 0 : 1))
                return fail("vertex " + std::to_string(v) + " violates the branching degree rule");
        if (! is_connected(edge_subgraph(g, br.edges)))
            return fail("branching does not span");
    }
    for (Vertex v = 0; v < n; ++v)
        if (seen_roots[v] != (v < static_cast<Vertex>(roots.size()) ? roots[v] : 0))
            return fail("root multiplicity mismatch at " + std::to_string(v));
    if (check_caps) {
        auto deg = b.kind == BranchingKind::out ? b.orientation.out_degrees(g) : b.orientation.in_degrees(g);
        for (Vertex v = 0; v < n; ++v) {
            int d = g.degree(v);
            int cap = (z0 && *z0 == v) ? d / 2 : (d + 1) / 2;
            if (deg[v] > cap)
                return fail("degree cap exceeded at " + std::to_string(v));
        }
    }
    return {};
}

BranchingSet lift_back_branchings(const LiftLedger& ledger, const BranchingSet& derived)
{
    if (! ledger.dropped().empty())
        throw std::invalid_argument("lift_back_branchings: ledger dropped edges");
    const auto& steps = ledger.steps();
    std::map<EdgeId, Edge> live;
    for (const auto& e : ledger.derived().edges())
        live[e.id] = e;
    Orientation o = derived.orientation;
    std::vector<std::vector<EdgeId>> trees;
    for (const auto& b : derived.branchings)
        trees.push_back(b.edges);
    auto tail = [&](EdgeId e) {
        const auto& ed = live.at(e);
        return o.get(e) == Dir::forward ? ed.u : ed.v;
    };
    auto head = [&](EdgeId e) { return live.at(e).other(tail(e)); };
    auto set_tail = [&](const Edge& e, Vertex t) { o.set(e.id, t == e.u ? Dir::forward : Dir::backward); };

    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
        const auto& s = *it;
        const Vertex u = s.pivot;
        if (! s.created) {
            // Parallel pair: one edge in, one edge out at the pivot.
            live[s.first.id] = s.first;
            live[s.second.id] = s.second;
            set_tail(s.first, s.first.other(u));
            set_tail(s.second, u);
            continue;
        }
        const Edge c = *s.created;
        const Vertex x = tail(c.id), y = head(c.id);
        const Edge ex = s.first.other(u) == x ? s.first : s.second;
        const Edge ey = ex.id == s.first.id ? s.second : s.first;
        live[ex.id] = ex;
        live[ey.id] = ey;
        set_tail(ex, x);
        set_tail(ey, u);
        for (auto& t : trees) {
            auto pos = std::find(t.begin(), t.end(), c.id);
            if (pos == t.end())
                continue;
            t.erase(pos);
            // Side of T - c containing x (undirected).
            std::vector<char> side(ledger.base().vertex_count(), 0);
            std::vector<Vertex> stack{x};
            side[x] = 1;
            while (! stack.empty()) {
                auto a = stack.back();
                stack.pop_back();
                for (auto e : t) {
                    const auto& ed = live.at(e);
                    if (ed.touches(a) && ! side[ed.other(a)]) {
                        side[ed.other(a)] = 1;
                        stack.push_back(ed.other(a));
                    }
                }
            }
            // Directed walk inside T from `from` to `to`; returns its edges.
            auto directed_path = [&](Vertex from, Vertex to) {
                std::map<Vertex, EdgeId> via;
                std::vector<Vertex> st{from};
                via[from] = -1;
                while (! st.empty()) {
                    auto a = st.back();
                    st.pop_back();
                    for (auto e : t)
                        if (tail(e) == a && ! via.count(head(e))) {
                            via[head(e)] = e;
                            st.push_back(head(e));
                        }
                }
                std::vector<EdgeId> path;
                for (auto v = to; v != from; v = tail(via.at(v)))
                    path.push_back(via.at(v));
                std::reverse(path.begin(), path.end());
                return path;
            };
            if (derived.kind == BranchingKind::out) {
                if (side[u])
                    t.push_back(ey.id);
                else {
                    auto p = directed_path(y, u);
                    EdgeId zu = p.back();
                    t.erase(std::find(t.begin(), t.end(), zu));
                    t.push_back(ey.id);
                    t.push_back(ex.id);
                }
            }
            else {
                if (! side[u])
                    t.push_back(ex.id);
                else {
                    auto p = directed_path(u, x);
                    EdgeId uz = p.front();
                    t.erase(std::find(t.begin(), t.end(), uz));
                    t.push_back(ex.id);
                    t.push_back(ey.id);
                }
            }
            break;
        }
        live.erase(c.id);
    }
    BranchingSet out;
    out.kind = derived.kind;
    out.orientation = Orientation(ledger.base());
    for (auto e : ledger.base().edge_ids())
        out.orientation.set(e, o.get(e));
    for (std::size_t i = 0; i < trees.size(); ++i) {
        std::sort(trees[i].begin(), trees[i].end());
        out.branchings.push_back(Branching{derived.branchings[i].root, trees[i]});
    }
    return out;
}

VertexSet tree_connected_subgraph(const MultiGraph& g, int m)
{
    const int n = g.vertex_count();
    if (n < 2 || m < 0 || g.edge_count() < m * (n - 1))
        throw std::invalid_argument("tree_connected_subgraph: need n >= 2 and |E| >= m(n-1)");
    VertexSet cur = VertexSet::full(n);
    while (true) {
        auto sub = induced_subgraph(g, cur);
        auto r = spanning_tree_packing(sub.graph, m);
        if (r.packing)
            return cur;
        bool moved = false;
        for (const auto& part : r.deficiency->parts) {
            if (part.size() < 2)
                continue;
            if (internal_edges(sub.graph, part) >= m * (part.size() - 1)) {
                VertexSet next;
                for (auto v : part.members())
                    next.insert(sub.original[v]);
                cur = next;
                moved = true;
                break;
            }
        }
        if (! moved)
            throw ContractViolation("tree_connected_subgraph: no dense part in the deficient partition");
    }
}

}  // namespace modk
