#include "modk/decomposition.hpp"

#include "modk/connectivity.hpp"
#include "modk/tree_packing.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace modk {

namespace {

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

int sum(const std::vector<int>& v) { return std::accumulate(v.begin(), v.end(), 0); }

void check_size(const MultiGraph& g, const std::vector<int>& v, const char* what)
{
    if (static_cast<int>(v.size()) != g.vertex_count())
        throw std::invalid_argument(std::string(what) + ": size differs from vertex count");
}

// Branchings split by root: the first r1(v) rooted at v form the first group.
void split_by_roots(const BranchingSet& b, const std::vector<int>& r1, std::vector<Branching>& first,
                    std::vector<Branching>& second)
{
    std::vector<int> used(r1.size(), 0);
    for (const auto& br : b.branchings) {
        if (used[br.root] < r1[br.root]) {
            ++used[br.root];
            first.push_back(br);
        } else {
            second.push_back(br);
        }
    }
}

std::vector<EdgeId> union_edges(const std::vector<Branching>& bs)
{
    std::vector<EdgeId> out;
    for (const auto& b : bs)
        out.insert(out.end(), b.edges.begin(), b.edges.end());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<int> subset_degrees(const MultiGraph& g, const std::vector<EdgeId>& edges)
{
    std::vector<int> d(g.vertex_count(), 0);
    for (auto e : edges) {
        ++d[g.edge(e).u];
        ++d[g.edge(e).v];
    }
    return d;
}

std::vector<int> subset_out_degrees(const MultiGraph& g, const Orientation& d, const std::vector<EdgeId>& edges)
{
    std::vector<int> out(g.vertex_count(), 0);
    for (auto e : edges)
        ++out[d.tail(g, e)];
    return out;
}

std::vector<int> subset_in_degrees(const MultiGraph& g, const Orientation& d, const std::vector<EdgeId>& edges)
{
    std::vector<int> in(g.vertex_count(), 0);
    for (auto e : edges)
        ++in[d.head(g, e)];
    return in;
}

std::vector<EdgeId> edge_complement(const MultiGraph& g, const std::vector<EdgeId>& edges)
{
    auto in = membership(g, edges);
    std::vector<EdgeId> out;
    for (auto e : g.edge_ids())
        if (!in[e])
            out.push_back(e);
    return out;
}

bool rule_windows_hold(const MultiGraph& g, const Orientation& d, const std::vector<EdgeId>& f1,
                       const std::vector<EdgeId>& f2, const std::vector<int>& s1, const std::vector<int>& s2,
                       const std::vector<EdgeId>& g1, std::string* why)
{
    auto all = g.edge_ids();
    auto out = subset_out_degrees(g, d, all), in = subset_in_degrees(g, d, all);
    auto o1 = subset_out_degrees(g, d, f1), o2 = subset_out_degrees(g, d, f2);
    auto d1 = subset_degrees(g, g1);
    auto has1 = membership(g, g1);
    for (auto e : f1)
        if (!has1[e]) {
            if (why)
                *why = "G1 misses F1 edge " + std::to_string(e);
            return false;
        }
    for (auto e : f2)
        if (has1[e]) {
            if (why)
                *why = "G1 contains F2 edge " + std::to_string(e);
            return false;
        }
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        int d2 = g.degree(v) - d1[v];
        bool ok = out[v] - o2[v] - s2[v] <= d1[v] && d1[v] <= in[v] + o1[v] + s1[v] &&
                  out[v] - o1[v] - s1[v] <= d2 && d2 <= in[v] + o2[v] + s2[v];
        if (!ok) {
            if (why)
                *why = "window fails at vertex " + std::to_string(v);
            return false;
        }
    }
    return true;
}

void half_surplus(const MultiGraph& g, const Orientation& d, std::vector<int>& s1, std::vector<int>& s2)
{
    auto out = d.out_degrees(g), in = d.in_degrees(g);
    s1.assign(g.vertex_count(), 0);
    s2.assign(g.vertex_count(), 0);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        int x = out[v] - in[v];
        if (x > 0) {
            s2[v] = (x + 1) / 2;
            s1[v] = x / 2;
        }
    }
}

RuleSplit eulerian_rule_decomposition(const MultiGraph& g, const Orientation& d, const std::vector<EdgeId>& f1,
                                      const std::vector<EdgeId>& f2, const std::vector<int>& s1,
                                      const std::vector<int>& s2)
{
    int n = g.vertex_count();
    check_size(g, s1, "eulerian_rule_decomposition: s1");
    check_size(g, s2, "eulerian_rule_decomposition: s2");
    if (!d.is_total(g))
        throw std::invalid_argument("eulerian_rule_decomposition: orientation is partial");
    if (f1.empty() && f2.empty())
        throw std::invalid_argument("eulerian_rule_decomposition: F1 and F2 are both empty");
    auto in1 = membership(g, f1), in2 = membership(g, f2);
    for (auto e : f2)
        if (in1[e])
            throw std::invalid_argument("eulerian_rule_decomposition: F1 and F2 share an edge");
    auto out = d.out_degrees(g), in = d.in_degrees(g);
    for (Vertex v = 0; v < n; ++v)
        if (s1[v] < 0 || s2[v] < 0 || s1[v] + s2[v] < out[v] - in[v])
            throw std::invalid_argument("eulerian_rule_decomposition: s1 + s2 below the surplus at vertex " +
                                        std::to_string(v));
    {
        int comps = 0;
        auto label = components(g, &comps);
        int with_edges = -1;
        for (const auto& e : g.edges()) {
            if (with_edges < 0)
                with_edges = label[e.u];
            else if (label[e.u] != with_edges)
                throw std::invalid_argument("eulerian_rule_decomposition: graph is not connected");
        }
    }

    if (f1.empty()) {
        RuleSplit r = eulerian_rule_decomposition(g, d, f2, f1, s2, s1);
        std::swap(r.g1, r.g2);
        r.swapped = true;
        return r;
    }

    // Balancing arcs: surplus-in vertices send arcs to surplus-out vertices.
    MultiGraph aug = g;
    std::vector<Vertex> need_in, need_out;
    for (Vertex v = 0; v < n; ++v) {
        for (int i = in[v]; i < out[v]; ++i)
            need_in.push_back(v);
        for (int i = out[v]; i < in[v]; ++i)
            need_out.push_back(v);
    }
    Orientation ad(aug);
    for (auto e : g.edge_ids())
        ad.set(e, d.get(e));
    std::vector<char> is_m;
    for (std::size_t i = 0; i < need_in.size(); ++i) {
        EdgeId id = aug.add_edge(need_out[i], need_in[i]);
        ad = [&] {
            Orientation o(aug);
            for (auto e : aug.edge_ids())
                if (e != id)
                    o.set(e, ad.get(e));
            return o;
        }();
        ad.direct(aug, id, need_out[i]);
    }
    is_m.assign(aug.id_bound(), 0);
    for (auto e : aug.edge_ids())
        if (!g.has_edge(e) || e >= g.id_bound())
            is_m[e] = 1;

    EdgeId first = *std::min_element(f1.begin(), f1.end());
    auto tour = directed_eulerian_tour(aug, ad, ad.tail(aug, first), first);
    const int t = static_cast<int>(tour.size());
    auto special = [&](EdgeId e) { return is_m[e] || in1[e] || in2[e]; };

    // omega_j(v): incoming balancing arcs followed by an ordinary edge.
    std::vector<int> omega_index(t, 0);
    std::vector<int> count(n, 0);
    for (int i = 1; i < t; ++i) {
        EdgeId prev = tour[i - 1], cur = tour[i];
        if (is_m[prev] && !in1[cur] && !in2[cur]) {
            Vertex v = ad.head(aug, prev);
            omega_index[i] = ++count[v];
        }
    }

    RuleSplit r;
    std::vector<char> in_h(aug.id_bound(), 0);
    for (int i = 0; i < t; ++i) {
        EdgeId cur = tour[i], prev = tour[(i + t - 1) % t];
        TourRule rule;
        if (!special(cur)) {
            if (omega_index[i] > 0) {
                Vertex v = ad.tail(aug, cur);
                rule = omega_index[i] <= s2[v] ? TourRule::surplus_skip : TourRule::surplus_take;
            } else {
                rule = in_h[prev] ? TourRule::alternate_skip : TourRule::alternate_take;
            }
        } else {
            rule = in1[cur] ? TourRule::forced_take : TourRule::forced_skip;
        }
        ++r.rule_hits[static_cast<int>(rule)];
        if (rule == TourRule::surplus_take || rule == TourRule::alternate_take || rule == TourRule::forced_take)
            in_h[cur] = 1;
    }
    for (auto e : g.edge_ids())
        (in_h[e] ? r.g1 : r.g2).push_back(e);

    std::string why;
    if (!rule_windows_hold(g, d, f1, f2, s1, s2, r.g1, &why))
        throw ContractViolation("eulerian_rule_decomposition: " + why);
    return r;
}

DecompositionResult two_tree_connected_factors(const MultiGraph& g, int m1, int m2, const std::vector<int>& r1,
                                               const std::vector<int>& r2)
{
    int n = g.vertex_count();
    check_size(g, r1, "two_tree_connected_factors: r1");
    check_size(g, r2, "two_tree_connected_factors: r2");
    if (m1 < 0 || m2 < 0 || m1 + m2 < 1)
        throw std::invalid_argument("two_tree_connected_factors: need m1 + m2 >= 1");
    if (sum(r1) != m1 || sum(r2) != m2)
        throw std::invalid_argument("two_tree_connected_factors: root counts do not sum to m1, m2");
    if (n < 2)
        throw std::invalid_argument("two_tree_connected_factors: need at least two vertices");
    if (!is_lambda_edge_connected(g, 2 * m1 + 2 * m2))
        throw std::invalid_argument("two_tree_connected_factors: graph is not (2m1+2m2)-edge-connected");

    std::vector<int> roots(n);
    for (Vertex v = 0; v < n; ++v)
        roots[v] = r1[v] + r2[v];
    auto bs = disjoint_branchings(g, roots, BranchingKind::in);
    std::vector<Branching> b1, b2;
    split_by_roots(bs, r1, b1, b2);
    auto f1 = union_edges(b1), f2 = union_edges(b2);
    std::vector<int> s1, s2;
    half_surplus(g, bs.orientation, s1, s2);
    auto split = eulerian_rule_decomposition(g, bs.orientation, f1, f2, s1, s2);

    auto d1 = subset_degrees(g, split.g1);
    for (Vertex v = 0; v < n; ++v) {
        int d = g.degree(v), d2 = d - d1[v];
        if (d1[v] < d / 2 - m2 + r2[v] || d1[v] > (d + 1) / 2 + m1 - r1[v] || d2 < d / 2 - m1 + r1[v] ||
            d2 > (d + 1) / 2 + m2 - r2[v])
            throw ContractViolation("two_tree_connected_factors: degree window fails at vertex " + std::to_string(v));
    }
    if (!is_tree_connected(edge_subgraph(g, split.g1), m1) || !is_tree_connected(edge_subgraph(g, split.g2), m2))
        throw ContractViolation("two_tree_connected_factors: a part lost its tree-connectivity");
    DecompositionResult res;
    res.parts = {split.g1, split.g2};
    res.certificates = {std::to_string(m1) + "-tree-connected, windows hold",
                        std::to_string(m2) + "-tree-connected, windows hold"};
    return res;
}

TreePlusLiftable tree_plus_liftable_decomposition(const MultiGraph& g, int m1, int m2, const std::vector<int>& s,
                                                  const std::vector<int>& r1, const std::vector<int>& r2,
                                                  std::optional<Vertex> z0)
{
    int n = g.vertex_count();
    check_size(g, s, "tree_plus_liftable_decomposition: s");
    check_size(g, r1, "tree_plus_liftable_decomposition: r1");
    check_size(g, r2, "tree_plus_liftable_decomposition: r2");
    if (m1 < 0 || m2 < 1)
        throw std::invalid_argument("tree_plus_liftable_decomposition: need m1 >= 0 and m2 >= 1");
    if (sum(r1) != m1 || sum(r2) != m2)
        throw std::invalid_argument("tree_plus_liftable_decomposition: root counts do not sum to m1, m2");
    if (n < 2)
        throw std::invalid_argument("tree_plus_liftable_decomposition: need at least two vertices");
    if (z0 && (*z0 < 0 || *z0 >= n))
        throw std::invalid_argument("tree_plus_liftable_decomposition: z0 out of range");
    auto odd_z0 = [&](Vertex v) { return z0 && *z0 == v && g.degree(v) % 2 == 1; };
    std::vector<int> phi(n);
    for (Vertex v = 0; v < n; ++v) {
        phi[v] = m1 + r2[v] + (odd_z0(v) ? 1 : 0);
        if (s[v] < 0 || s[v] > phi[v])
            throw std::invalid_argument("tree_plus_liftable_decomposition: s exceeds its cap at vertex " +
                                        std::to_string(v));
    }
    const int lambda = 2 * m1 + 2 * m2;
    if (!is_lambda_edge_connected(g, lambda))
        throw std::invalid_argument("tree_plus_liftable_decomposition: graph is not (2m1+2m2)-edge-connected");

    // Lift down to maximum degree 2m1 + 2m2 + 1.
    LiftLedger ledger(g);
    for (;;) {
        const auto& h = ledger.derived();
        Vertex u = -1;
        for (Vertex v = 0; v < n && u < 0; ++v)
            if (h.degree(v) >= lambda + 2)
                u = v;
        if (u < 0)
            break;
        auto [a, b] = find_admissible_lift(h, u, LiftMode::lambda(lambda));
        ledger.lift(u, a, b);
    }
    const MultiGraph& h = ledger.derived();

    TreePlusLiftable res;
    std::vector<EdgeId> l_edges;
    if (m1 >= 1) {
        std::vector<int> roots(n);
        for (Vertex v = 0; v < n; ++v)
            roots[v] = r1[v] + r2[v];
        auto bs = disjoint_branchings(h, roots, BranchingKind::in, z0);
        std::vector<Branching> fb, lb;
        split_by_roots(bs, r1, fb, lb);
        l_edges = union_edges(lb);
        auto q_edges = edge_complement(h, l_edges);
        auto qout = subset_out_degrees(h, bs.orientation, q_edges), qin = subset_in_degrees(h, bs.orientation, q_edges);

        BranchingSet only_f{bs.orientation, BranchingKind::in, fb};
        auto lifted = lift_back_branchings(ledger, only_f);
        const Orientation& og = lifted.orientation;

        LiftLedger l_ledger = ledger.restricted(l_edges, false);
        res.m2 = l_ledger.base().edge_ids();
        auto r_ids = edge_complement(g, res.m2);
        MultiGraph rg = edge_subgraph(g, r_ids);
        std::vector<int> s1(n), s2(n);
        for (Vertex v = 0; v < n; ++v) {
            s1[v] = qout[v] - phi[v] + s[v];
            s2[v] = std::max(0, qout[v] - qin[v] - s1[v]);
        }
        auto split = eulerian_rule_decomposition(rg, og, union_edges(lifted.branchings), {}, s1, s2);
        res.m1 = split.g1;
        res.ledger = std::move(l_ledger);
    } else {
        // One out-edge per root (plus one at an odd z0) forms Q; H - Q keeps
        // m2 spanning trees.
        Orientation qd(h);
        std::vector<EdgeId> q;
        std::vector<char> taken(h.id_bound(), 0);
        for (Vertex v = 0; v < n; ++v)
            for (int i = 0; i < r2[v]; ++i) {
                EdgeId pick = -1;
                for (auto e : h.incident(v))
                    if (!taken[e]) {
                        pick = e;
                        break;
                    }
                if (pick < 0)
                    throw ContractViolation("tree_plus_liftable_decomposition: no free edge at a root");
                taken[pick] = 1;
                q.push_back(pick);
                qd.direct(h, pick, v);
            }
        std::optional<Vertex> odd;
        if (z0 && h.degree(*z0) % 2 == 1)
            odd = z0;
        auto cf = catlin_factor(h, m2, q, odd);
        if (odd) {
            if (!cf.excluded)
                throw ContractViolation("tree_plus_liftable_decomposition: no edge excluded at z0");
            q.push_back(*cf.excluded);
            qd.direct(h, *cf.excluded, *odd);
        }
        std::sort(q.begin(), q.end());
        l_edges = edge_complement(h, q);

        // Walk each Q trail from its tail; s(v) of the trails leaving v start blue.
        std::vector<int> blue_left(s);
        for (auto e : q) {
            const Trail& tr = ledger.trail(e);
            Vertex x = qd.tail(h, e);
            std::vector<EdgeId> seq = tr.edges;
            if (tr.from != x)
                std::reverse(seq.begin(), seq.end());
            bool blue = blue_left[x] > 0;
            if (blue)
                --blue_left[x];
            for (auto be : seq) {
                if (blue)
                    res.m1.push_back(be);
                blue = !blue;
            }
        }
        std::sort(res.m1.begin(), res.m1.end());
        res.ledger = ledger.restricted(l_edges, true);
        res.m2 = res.ledger.base().edge_ids();
    }

    // Both inequality families, with the floor at z0.
    auto dm1 = subset_degrees(g, res.m1);
    const MultiGraph& l = res.ledger.derived();
    const MultiGraph& m2g = res.ledger.base();
    if (!is_tree_connected(edge_subgraph(g, res.m1), m1))
        throw ContractViolation("tree_plus_liftable_decomposition: M1 is not m1-tree-connected");
    if (!is_tree_connected(l, m2))
        throw ContractViolation("tree_plus_liftable_decomposition: L is not m2-tree-connected");
    for (Vertex v = 0; v < n; ++v) {
        int d = g.degree(v), low2 = 2 * dm1[v] + m2g.degree(v) - l.degree(v),
            high2 = 2 * dm1[v] + m2g.degree(v) + l.degree(v);
        int top = (z0 && *z0 == v ? d / 2 : (d + 1) / 2) + m1 + m2 + s[v] - r1[v] - r2[v];
        if (low2 < 2 * (d / 2 - m1 - m2 + s[v]) || high2 > 2 * top)
            throw ContractViolation("tree_plus_liftable_decomposition: inequality fails at vertex " +
                                    std::to_string(v));
    }
    return res;
}

TreePlusTrees tree_plus_trees_decomposition(const MultiGraph& g, int m1, int m2, const std::vector<int>& r1,
                                            const std::vector<int>& r2)
{
    int n = g.vertex_count();
    check_size(g, r1, "tree_plus_trees_decomposition: r1");
    check_size(g, r2, "tree_plus_trees_decomposition: r2");
    if (m1 < 1 || m2 < 0)
        throw std::invalid_argument("tree_plus_trees_decomposition: need m1 >= 1 and m2 >= 0");
    if (sum(r1) != m1 || sum(r2) != m2)
        throw std::invalid_argument("tree_plus_trees_decomposition: root counts do not sum to m1, m2");
    if (n < 2)
        throw std::invalid_argument("tree_plus_trees_decomposition: need at least two vertices");
    if (!is_lambda_edge_connected(g, 2 * m1 + 2 * m2))
        throw std::invalid_argument("tree_plus_trees_decomposition: graph is not (2m1+2m2)-edge-connected");

    std::vector<int> roots(n);
    for (Vertex v = 0; v < n; ++v)
        roots[v] = r1[v] + r2[v];
    auto bs = disjoint_branchings(g, roots, BranchingKind::in);
    std::vector<Branching> fb, tb;
    split_by_roots(bs, r1, fb, tb);
    TreePlusTrees res;
    res.g2 = union_edges(tb);
    for (const auto& b : tb)
        res.trees.push_back(b.edges);
    auto rest = edge_complement(g, res.g2);
    MultiGraph gg = edge_subgraph(g, rest);
    std::vector<int> s1, s2;
    half_surplus(gg, bs.orientation, s1, s2);
    auto split = eulerian_rule_decomposition(gg, bs.orientation, union_edges(fb), {}, s1, s2);
    res.g1 = split.g1;

    auto d1 = subset_degrees(g, res.g1), d2 = subset_degrees(g, res.g2);
    for (Vertex v = 0; v < n; ++v) {
        int d = g.degree(v), base = (d - d2[v]) / 2;
        bool first = base <= d1[v] && d1[v] <= base + m1 - r1[v];
        bool second = d / 2 - m2 <= d1[v] && d1[v] + d2[v] <= (d + 1) / 2 + m1 + m2 - r1[v] - r2[v];
        if (!first && !second)
            throw ContractViolation("tree_plus_trees_decomposition: neither window holds at vertex " +
                                    std::to_string(v));
    }
    if (!is_tree_connected(edge_subgraph(g, res.g1), m1))
        throw ContractViolation("tree_plus_trees_decomposition: G1 is not m1-tree-connected");
    return res;
}

RuleSplit list_factor_decomposition(const MultiGraph& g, const Orientation& d, const std::vector<EdgeId>& f1,
                                    const std::vector<EdgeId>& f2, const std::vector<int>& side,
                                    const std::vector<std::vector<int>>& lists, const std::vector<int>& s1,
                                    const std::vector<int>& s2)
{
    int n = g.vertex_count();
    check_size(g, side, "list_factor_decomposition: side");
    check_size(g, s1, "list_factor_decomposition: s1");
    check_size(g, s2, "list_factor_decomposition: s2");
    if (static_cast<int>(lists.size()) != n)
        throw std::invalid_argument("list_factor_decomposition: lists size differs from vertex count");
    if (!d.is_total(g))
        throw std::invalid_argument("list_factor_decomposition: orientation is partial");
    auto in1 = membership(g, f1), in2 = membership(g, f2);
    for (auto e : f2)
        if (in1[e])
            throw std::invalid_argument("list_factor_decomposition: F1 and F2 share an edge");
    auto all = g.edge_ids();
    auto out = subset_out_degrees(g, d, all);
    auto df1 = subset_degrees(g, f1), df2 = subset_degrees(g, f2);
    auto i1 = subset_in_degrees(g, d, f1), i2 = subset_in_degrees(g, d, f2);

    std::vector<std::vector<char>> allowed(n);
    for (Vertex v = 0; v < n; ++v) {
        if (side[v] != 1 && side[v] != 2)
            throw std::invalid_argument("list_factor_decomposition: side must be 1 or 2");
        const auto& l = lists[v];
        std::vector<int> sorted(l);
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        int dv = g.degree(v);
        bool caps = side[v] == 1 ? (s1[v] <= df1[v] && s2[v] <= df2[v]) : (s1[v] <= df2[v] && s2[v] <= df1[v]);
        if (s1[v] < 0 || s2[v] < 0 || !caps)
            throw std::invalid_argument("list_factor_decomposition: s bound exceeds F degree at vertex " +
                                        std::to_string(v));
        for (int x : sorted)
            if (x < s1[v] || x > dv - s2[v])
                throw std::invalid_argument("list_factor_decomposition: list value outside [s1, d - s2] at vertex " +
                                            std::to_string(v));
        if (static_cast<int>(sorted.size()) < out[v] + 1 + i1[v] + i2[v] - s1[v] - s2[v])
            throw std::invalid_argument("list_factor_decomposition: list too short at vertex " + std::to_string(v));
        // Shifted list on H = G - F, as allowed values of d_{H'}.
        int dh = dv - df1[v] - df2[v];
        allowed[v].assign(dh + 1, 0);
        for (int x : sorted) {
            int y = side[v] == 1 ? x - df1[v] : dv - x - df1[v];
            bool fits = side[v] == 1 ? (df1[v] <= x && x <= dv - df2[v]) : (df2[v] <= x && x <= dv - df1[v]);
            if (fits && y >= 0 && y <= dh)
                allowed[v][y] = 1;
        }
    }

    std::vector<Edge> hs;
    for (const auto& e : g.edges())
        if (!in1[e.id] && !in2[e.id])
            hs.push_back(e);
    if (static_cast<int>(hs.size()) > kListFactorEdgeCap)
        throw std::invalid_argument("list_factor_decomposition: more than " + std::to_string(kListFactorEdgeCap) +
                                    " free edges");

    // Exhaustive search, edges by id, exclusion first.
    std::vector<int> deg(n, 0), rem(n, 0);
    for (const auto& e : hs) {
        ++rem[e.u];
        ++rem[e.v];
    }
    std::vector<char> pick(hs.size(), 0);
    auto reachable = [&](Vertex v) {
        for (int y = deg[v]; y <= deg[v] + rem[v] && y < static_cast<int>(allowed[v].size()); ++y)
            if (allowed[v][y])
                return true;
        return false;
    };
    for (Vertex v = 0; v < n; ++v)
        if (!reachable(v))
            throw ContractViolation("list_factor_decomposition: empty shifted list at vertex " + std::to_string(v));
    auto dfs = [&](auto&& self, std::size_t i) -> bool {
        if (i == hs.size())
            return true;
        const Edge& e = hs[i];
        --rem[e.u];
        --rem[e.v];
        for (int take = 0; take < 2; ++take) {
            deg[e.u] += take;
            deg[e.v] += take;
            pick[i] = static_cast<char>(take);
            if (reachable(e.u) && reachable(e.v) && self(self, i + 1))
                return true;
            deg[e.u] -= take;
            deg[e.v] -= take;
        }
        ++rem[e.u];
        ++rem[e.v];
        pick[i] = 0;
        return false;
    };
    if (!dfs(dfs, 0))
        throw ContractViolation("list_factor_decomposition: no factor with the shifted lists");

    RuleSplit r;
    std::vector<char> in_g1(g.id_bound(), 0);
    for (auto e : f1)
        in_g1[e] = 1;
    for (std::size_t i = 0; i < hs.size(); ++i)
        if (pick[i])
            in_g1[hs[i].id] = 1;
    for (auto e : g.edge_ids())
        (in_g1[e] ? r.g1 : r.g2).push_back(e);
    auto dg1 = subset_degrees(g, r.g1);
    for (Vertex v = 0; v < n; ++v) {
        int got = side[v] == 1 ? dg1[v] : g.degree(v) - dg1[v];
        if (std::find(lists[v].begin(), lists[v].end(), got) == lists[v].end())
            throw ContractViolation("list_factor_decomposition: degree outside list at vertex " + std::to_string(v));
    }
    return r;
}

}  // namespace modk
