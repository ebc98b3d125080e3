#include "doctest.h"
#include "modk/graph.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <set>

using namespace modk;

namespace {
void check_tour(const MultiGraph& g, const std::vector<EdgeId>& tour, Vertex start)
{
    REQUIRE(static_cast<int>(tour.size()) == g.edge_count());
    std::set<EdgeId> seen(tour.begin(), tour.end());
    CHECK(seen.size() == tour.size());
    Vertex at = start;
    for (auto e : tour) {
        REQUIRE(g.edge(e).touches(at));
        at = g.edge(e).other(at);
    }
    CHECK(at == start);
}
}

TEST_CASE("edges keep ids across deletion")
{
    MultiGraph g(3);
    auto a = g.add_edge(0, 1);
    auto b = g.add_edge(1, 2);
    auto c = g.add_edge(0, 1);
    g.remove_edge(b);
    CHECK(g.edge_count() == 2);
    CHECK(g.has_edge(a));
    CHECK_FALSE(g.has_edge(b));
    CHECK(g.edge(c).u == 0);
    CHECK(g.multiplicity(0, 1) == 2);
    CHECK_THROWS_AS(g.add_edge(1, 1), std::invalid_argument);
}

TEST_CASE("contraction examples")
{
    auto c = contract(cycle_graph(4), VertexSet{0, 1});
    CHECK(c.graph.vertex_count() == 3);
    CHECK(c.graph.edge_count() == 3);
    CHECK(c.graph.degree(c.merged) == 2);

    auto k = contract(complete_graph(4), VertexSet{0, 1, 2});
    CHECK(k.graph.vertex_count() == 2);
    CHECK(k.graph.multiplicity(0, 1) == 3);

    auto all = contract(complete_graph(4), VertexSet::full(4));
    CHECK(all.graph.vertex_count() == 1);
    CHECK(all.graph.edge_count() == 0);

    CHECK_THROWS_AS(contract(cycle_graph(4), VertexSet{}), std::invalid_argument);
}

TEST_CASE("boundary degree against enumeration")
{
    CHECK(boundary_degree(cycle_graph(4), VertexSet{0}) == 2);
    CHECK(boundary_degree(complete_graph(4), VertexSet{0, 1}) == 4);
    CHECK(boundary_degree(complete_graph(4), VertexSet::full(4)) == 0);

    auto g = scaled(complete_graph(5), 2);
    g.add_edge(0, 3);
    for (std::uint64_t a = 0; a < 32; ++a) {
        VertexSet s(a);
        CHECK(boundary_degree(g, s) == oracle::cut(g, a));
        CHECK(boundary_degree(g, s) == boundary_degree(g, s.complement(5)));
        int sum = 0;
        for (auto v : s.members())
            sum += g.degree(v);
        CHECK(boundary_degree(g, s) == sum - 2 * internal_edges(g, s));
        auto merged = contract(g, s.empty() ? VertexSet{0} : s);
        CHECK(merged.graph.degree(merged.merged) == boundary_degree(g, s.empty() ? VertexSet{0} : s));
    }
    VertexSet a{0, 1}, b{3};
    CHECK(boundary_degree(g, a | b) == boundary_degree(g, a) + boundary_degree(g, b) - 2 * cross_edges(g, a, b));
}

TEST_CASE("eulerian tours")
{
    MultiGraph tri(3);
    tri.add_edge(0, 1);
    tri.add_edge(1, 2);
    tri.add_edge(2, 0);
    Orientation d(tri);
    for (auto e : tri.edge_ids())
        d.set(e, Dir::forward);
    auto t = directed_eulerian_tour(tri, d, 0);
    CHECK(t == std::vector<EdgeId>{0, 1, 2});

    auto pair = parallel_pair(2);
    check_tour(pair, eulerian_tour(pair, 0), 0);

    auto c8 = scaled(cycle_graph(4), 2);
    auto tour = eulerian_tour(c8, 2, c8.incident(2).back());
    check_tour(c8, tour, 2);
    CHECK(tour.front() == c8.incident(2).back());

    CHECK_THROWS_AS(eulerian_tour(path_graph(3), 0), std::invalid_argument);
    CHECK_THROWS_AS(eulerian_tour(cycle_graph(4), 0, 1), std::invalid_argument);
}

TEST_CASE("balanced orientation respects floor and ceiling with a pin")
{
    auto g = complete_graph(6);  // all degrees odd
    for (Vertex z = 0; z < 6; ++z)
        for (bool ceil : {false, true}) {
            auto o = balanced_orientation(g, z, ceil);
            REQUIRE(o.is_total(g));
            auto out = o.out_degrees(g);
            for (Vertex v = 0; v < 6; ++v) {
                CHECK(out[v] >= 2);
                CHECK(out[v] <= 3);
            }
            CHECK(out[z] == (ceil ? 3 : 2));
        }
}

TEST_CASE("components and subgraphs")
{
    MultiGraph g(5);
    g.add_edge(0, 1);
    g.add_edge(3, 4);
    int count = 0;
    auto comp = components(g, &count);
    CHECK(count == 3);
    CHECK(comp[0] == comp[1]);
    CHECK_FALSE(is_connected(g));
    auto sub = induced_subgraph(complete_graph(4), VertexSet{1, 3});
    CHECK(sub.graph.vertex_count() == 2);
    CHECK(sub.graph.edge_count() == 1);
    CHECK(sub.original == std::vector<Vertex>{1, 3});
}
