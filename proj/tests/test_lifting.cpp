#include "doctest.h"
#include "modk/connectivity.hpp"
#include "modk/lifting.hpp"
#include "modk/tree_packing.hpp"
#include "oracles.hpp"

#include <set>

using namespace modk;

namespace {
// Vertex u joined to a and b by two parallel edges each.
MultiGraph b42()
{
    MultiGraph g(3);
    g.add_edge(0, 1);
    g.add_edge(0, 1);
    g.add_edge(0, 2);
    g.add_edge(0, 2);
    return g;
}

void check_ledger(const LiftLedger& l)
{
    const auto& base = l.base();
    const auto& der = l.derived();
    std::set<EdgeId> used;
    std::size_t total = 0;
    for (const auto& e : der.edges()) {
        const auto& t = l.trail(e.id);
        CHECK(((t.from == e.u && t.to == e.v) || (t.from == e.v && t.to == e.u)));
        Vertex at = t.from;
        for (auto id : t.edges) {
            REQUIRE(base.edge(id).touches(at));
            at = base.edge(id).other(at);
        }
        CHECK(at == t.to);
        used.insert(t.edges.begin(), t.edges.end());
        total += t.edges.size();
    }
    CHECK(used.size() == total);
    auto replay = l.replay();
    CHECK(replay.edge_ids() == der.edge_ids());
    for (Vertex v = 0; v < base.vertex_count(); ++v)
        CHECK((base.degree(v) - der.degree(v)) % 2 == 0);
}
}

TEST_CASE("lift_pair on C4 at vertex 3")
{
    LiftLedger l(cycle_graph(4));
    auto h = lift_pair(l, 3, 2);
    CHECK(h.edge_count() == 3);
    CHECK(h.degree(3) == 0);
    CHECK(h.multiplicity(0, 2) == 1);
    check_ledger(l);
}

TEST_CASE("lift_pair on B42 and a parallel pair")
{
    LiftLedger l(b42());
    auto h = lift_pair(l, 0, 2);
    CHECK(h.edge_count() == 3);
    CHECK(h.multiplicity(1, 2) == 1);

    LiftLedger p(parallel_pair(2));
    CHECK_THROWS_AS(lift_pair(p, 0, 1), std::invalid_argument);
    auto empty = lift_pair(p, 0, 1, 0);
    CHECK(empty.edge_count() == 0);
    CHECK(p.closed_trails().size() == 1);
    check_ledger(p);
}

TEST_CASE("admissible lift examples")
{
    auto g = b42();
    auto [a, b] = find_admissible_lift(g, 0, LiftMode::lambda(2));
    CHECK(g.edge(a).other(0) != g.edge(b).other(0));
    CHECK(oracle::lambda(lifted_copy(g, 0, a, b)) == 2);

    auto c4 = cycle_graph(4);
    auto pr = find_admissible_lift(c4, 3, LiftMode::parity(1, 1), 3);
    CHECK(pr == std::pair<EdgeId, EdgeId>{3, 2});
    CHECK(oracle::parity_connected(lifted_copy(c4, 3, 3, 2), 1, 1, 3));

    auto c8 = scaled(cycle_graph(4), 2);
    for (Vertex u = 0; u < 4; ++u) {
        auto [x, y] = find_admissible_lift(c8, u, LiftMode::size_parity(1, 1));
        CHECK(oracle::size_parity_connected(lifted_copy(c8, u, x, y), 1, 1, u));
    }
    CHECK_THROWS_AS(find_admissible_lift(c4, 0, LiftMode::lambda(2)), std::invalid_argument);
}

TEST_CASE("split off examples")
{
    auto s = split_off_vertex(cycle_graph(4), 3, LiftMode::lambda(2));
    CHECK(s.graph.vertex_count() == 3);
    CHECK(s.graph.edge_count() == 3);
    CHECK(oracle::lambda(s.graph) == 2);

    auto p = split_off_vertex(parallel_pair(2), 0, LiftMode::lambda(2));
    CHECK(p.graph.vertex_count() == 1);
    CHECK(p.graph.edge_count() == 0);

    auto c8 = split_off_vertex(scaled(cycle_graph(4), 2), 1, LiftMode::lambda(4));
    CHECK(c8.graph.vertex_count() == 3);
    CHECK(oracle::lambda(c8.graph) >= 4);
    check_ledger(c8.ledger);

    CHECK_THROWS_AS(split_off_vertex(path_graph(3), 0, LiftMode::lambda(1)), std::invalid_argument);
}

TEST_CASE("tree-connected split off examples")
{
    // The packing may route its tree through 3 as a leaf, needing no lift.
    auto a = split_off_tree_connected(cycle_graph(4), 3, 1);
    CHECK(a.lifts <= 1);
    CHECK(is_connected(a.graph));

    auto b = split_off_tree_connected(scaled(cycle_graph(4), 2), 0, 2);
    CHECK(b.lifts <= 2);
    CHECK(oracle::tree_connected(b.graph, 2));

    auto c = split_off_tree_connected(scaled(cycle_graph(3), 2), 0, 2);
    CHECK(c.lifts <= 2);
    CHECK(c.graph.vertex_count() == 2);
    CHECK(oracle::tree_connected(c.graph, 2));

    CHECK_THROWS_AS(split_off_tree_connected(complete_graph(5), 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(split_off_tree_connected(path_graph(3), 1, 2), std::invalid_argument);
}

TEST_CASE("tree-connected split off on random instances")
{
    std::mt19937 rng(17);
    for (int i = 0; i < 40; ++i) {
        int n = 3 + i % 4, m = 1 + i % 2;
        auto g = oracle::cycles_union(n, m, rng);
        if (! oracle::tree_connected(g, m))
            continue;
        for (Vertex u = 0; u < n; ++u) {
            if (g.degree(u) > 2 * m)
                continue;
            auto s = split_off_tree_connected(g, u, m);
            CHECK(s.lifts <= g.degree(u) - m);
            CHECK(oracle::tree_connected(s.graph, m));
        }
    }
}

TEST_CASE("induced orientation follows trails")
{
    LiftLedger l(cycle_graph(4));
    auto created = l.lift(3, 3, 2);
    REQUIRE(created);
    Orientation d(l.derived());
    d.direct(l.derived(), 0, 0);
    d.direct(l.derived(), 1, 1);
    d.direct(l.derived(), *created, 0);
    auto base = induce_orientation(l, d);
    CHECK(base.tail(l.base(), 3) == 0);
    CHECK(base.tail(l.base(), 2) == 3);
    CHECK(base.out_degrees(l.base())[3] == 1);

    LiftLedger p(parallel_pair(2));
    p.lift(0, 0, 1);
    auto q = induce_orientation(p, Orientation(p.derived()));
    CHECK(q.tail(p.base(), 0) != q.tail(p.base(), 1));

    LiftLedger id(complete_graph(4));
    auto bal = balanced_orientation(id.derived());
    auto same = induce_orientation(id, bal);
    for (auto e : id.base().edge_ids())
        CHECK(same.get(e) == bal.get(e));
}

TEST_CASE("out-degree identity after random lifts")
{
    std::mt19937 rng(23);
    for (int i = 0; i < 60; ++i) {
        int n = 3 + i % 4;
        LiftLedger l(oracle::cycles_union(n, 2, rng));
        for (int s = 0; s < 4; ++s) {
            const auto& h = l.derived();
            std::vector<Vertex> cand;
            for (Vertex v = 0; v < n; ++v)
                if (h.degree(v) >= 2)
                    cand.push_back(v);
            if (cand.empty())
                break;
            Vertex u = cand[rng() % cand.size()];
            auto inc = h.incident(u);
            std::shuffle(inc.begin(), inc.end(), rng);
            l.lift(u, inc[0], inc[1]);
        }
        check_ledger(l);
        // Every orientation of the derived graph satisfies the identity.
        const auto& h = l.derived();
        auto ids = h.edge_ids();
        for (int trial = 0; trial < 8; ++trial) {
            Orientation d(h);
            for (auto e : ids)
                d.set(e, rng() % 2 ? Dir::forward : Dir::backward);
            auto o = induce_orientation(l, d);
            auto ob = o.out_degrees(l.base()), od = d.out_degrees(h);
            for (Vertex v = 0; v < n; ++v)
                CHECK(ob[v] == od[v] + (l.base().degree(v) - h.degree(v)) / 2);
        }
    }
}

TEST_CASE("post-lift predicates hold in every mode")
{
    std::mt19937 rng(31);
    int checked = 0;
    for (int i = 0; i < 60; ++i) {
        int n = 3 + i % 4;
        auto g = oracle::cycles_union(n, 2 + i % 2, rng);
        Vertex u = static_cast<Vertex>(rng() % n);
        int lam = std::min(oracle::lambda(g), g.degree(u) - 2);
        if (lam >= 2) {
            auto [a, b] = find_admissible_lift(g, u, LiftMode::lambda(lam));
            CHECK(oracle::lambda(lifted_copy(g, u, a, b)) >= lam);
            ++checked;
        }
        int m = std::max(lam, 0) / 2;
        if (oracle::parity_connected(g, m, m, u)) {
            auto [a, b] = find_admissible_lift(g, u, LiftMode::parity(m, m));
            CHECK(oracle::parity_connected(lifted_copy(g, u, a, b), m, m, u));
            ++checked;
        }
        int np = (g.degree(u) - 2) / 2;
        if (np >= 1 && oracle::size_parity_connected(g, np, np, u)) {
            auto [a, b] = find_admissible_lift(g, u, LiftMode::size_parity(np, np));
            CHECK(oracle::size_parity_connected(lifted_copy(g, u, a, b), np, np, u));
            ++checked;
        }
    }
    CHECK(checked > 60);
}

TEST_CASE("connected pairing constraint still admits a lift")
{
    auto g = scaled(complete_graph(4), 2);  // 6-regular, lambda 6
    const Vertex u = 0;
    const auto& inc = g.incident(u);
    // Q: a path over the edges at u.
    std::vector<std::pair<EdgeId, EdgeId>> q;
    for (std::size_t i = 0; i + 1 < inc.size(); ++i)
        q.emplace_back(inc[i], inc[i + 1]);
    auto [a, b] = find_admissible_lift(g, u, LiftMode::parity(2, 2), std::nullopt, &q);
    bool inside = false;
    for (auto [x, y] : q)
        inside |= (x == a && y == b) || (x == b && y == a);
    CHECK(inside);
    CHECK(oracle::parity_connected(lifted_copy(g, u, a, b), 2, 2, u));
}
