#include "modk/alpha.hpp"

#include "modk/lifting.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace modk {

ResidueMap::ResidueMap(int k, std::vector<int> v) : k(k), values(std::move(v))
{
    if (k < 1)
        throw std::invalid_argument("ResidueMap: modulus must be positive");
    for (auto& x : values)
        x = residue(x, k);
}

ResidueMap ResidueMap::constant(int k, int n, int value) { return ResidueMap(k, std::vector<int>(n, value)); }

int ResidueMap::sum() const { return std::accumulate(values.begin(), values.end(), 0); }

bool ResidueMap::matches_edge_count(const MultiGraph& g) const
{
    return residue(sum(), k) == residue(g.edge_count(), k);
}

int residue(long long a, int k)
{
    long long r = a % k;
    return static_cast<int>(r < 0 ? r + k : r);
}

int AlphaValue::abs_twice() const { return std::abs(twice.front()); }

std::string AlphaValue::to_string() const
{
    auto one = [](int t) { return t % 2 ? std::to_string(t) + "/2" : std::to_string(t / 2); };
    if (twice.size() == 1)
        return one(twice[0]);
    return "{" + one(twice[0]) + "," + one(twice[1]) + "}";
}

long long residue_sum(const MultiGraph& g, const ResidueMap& p, VertexSet a)
{
    long long s = 0;
    for (auto v : a.members())
        s += p[v];
    return s - internal_edges(g, a);
}

namespace {
    AlphaValue from_twice(long long t, int k)
    {
        int r = residue(t, 2 * k);
        if (r < k)
            return {{r}};
        if (r > k)
            return {{r - 2 * k}};
        return {{-k, k}};
    }
}

AlphaValue alpha_of_set(const MultiGraph& g, const ResidueMap& p, VertexSet a)
{
    if (p.size() != g.vertex_count())
        throw std::invalid_argument("alpha_of_set: residue map size mismatch");
    return from_twice(2 * residue_sum(g, p, a) - boundary_degree(g, a), p.k);
}

AlphaValue alpha_of_vertex(const MultiGraph& g, const ResidueMap& p, Vertex v)
{
    return alpha_of_set(g, p, VertexSet::single(v));
}

namespace {
    // Doubled alphas congruent mod 2k.
    bool congruent(const AlphaValue& a, const AlphaValue& b, int k, int sign)
    {
        for (auto x : a.twice)
            for (auto y : b.twice)
                if (residue(x - sign * y, 2 * k) == 0)
                    return true;
        return false;
    }

    void fail(AlphaReport& r, const std::string& what)
    {
        r.ok = false;
        if (r.failures.size() < 32)
            r.failures.push_back(what);
    }
}

AlphaReport check_lift_invariance(const MultiGraph& g, const ResidueMap& p, Vertex u, EdgeId a, EdgeId b)
{
    AlphaReport r;
    const int n = g.vertex_count();
    auto h = lifted_copy(g, u, a, b);
    Vertex x = g.edge(a).other(u), y = g.edge(b).other(u);
    auto q = p.values;
    q[u] -= 1;
    if (x == y)
        q[x] -= 1;
    ResidueMap p2(p.k, q);
    for (std::uint64_t m = 0; m < (1ULL << n); ++m) {
        VertexSet s(m);
        ++r.checks;
        if (alpha_of_set(g, p, s).abs_twice() != alpha_of_set(h, p2, s).abs_twice())
            fail(r, "lift at " + std::to_string(u) + " of " + std::to_string(a) + "," + std::to_string(b)
                        + " changes |alpha| on " + s.to_string());
    }
    return r;
}

AlphaReport check_alpha_properties(const MultiGraph& g, const ResidueMap& p, bool with_lifts)
{
    const int n = g.vertex_count();
    const int k = p.k;
    if (n > 12)
        throw std::invalid_argument("check_alpha_properties: too many vertices for pair enumeration");
    if (! p.matches_edge_count(g))
        throw std::invalid_argument("check_alpha_properties: sum of p must match |E| mod k");
    AlphaReport r;
    const std::uint64_t count = 1ULL << n, full = count - 1;
    std::vector<AlphaValue> al(count);
    std::vector<int> d(count);
    for (std::uint64_t m = 0; m < count; ++m) {
        al[m] = alpha_of_set(g, p, VertexSet(m));
        d[m] = boundary_degree(g, VertexSet(m));
    }
    if (al[full].abs_twice() != 0)
        fail(r, "alpha(V) is not zero");
    for (std::uint64_t a = 0; a < count; ++a) {
        const auto sa = VertexSet(a).to_string();
        // (3) complement
        ++r.checks;
        if (al[a].abs_twice() != al[full & ~a].abs_twice())
            fail(r, "(3) on " + sa);
        // (5) large cuts
        ++r.checks;
        if (d[a] >= 3 * k - 3 && d[a] < 2 * k - 2 + al[a].abs_twice())
            fail(r, "(5) on " + sa);
        // (6) parity
        ++r.checks;
        if ((d[a] - al[a].abs_twice()) % 2 != 0)
            fail(r, "(6) on " + sa);
        // (4) absorbing a zero vertex
        for (Vertex v = 0; v < n; ++v) {
            if ((a >> v) & 1 || al[1ULL << v].abs_twice() != 0)
                continue;
            ++r.checks;
            if (al[a].abs_twice() != al[a | (1ULL << v)].abs_twice())
                fail(r, "(4) on " + sa + " with " + std::to_string(v));
        }
        for (std::uint64_t b = 0; b < count; ++b) {
            // (1) congruent up to sign
            ++r.checks;
            if ((congruent(al[a], al[b], k, 1) || congruent(al[a], al[b], k, -1))
                && al[a].abs_twice() != al[b].abs_twice())
                fail(r, "(1) on " + sa + ", " + VertexSet(b).to_string());
            // (2) additivity on disjoint sets
            if (a & b)
                continue;
            ++r.checks;
            bool add = false;
            for (auto x : al[a].twice)
                for (auto y : al[b].twice)
                    add |= congruent(AlphaValue{{x + y}}, al[a | b], k, 1);
            if (! add)
                fail(r, "(2) on " + sa + ", " + VertexSet(b).to_string());
        }
    }
    if (with_lifts) {
        for (Vertex u = 0; u < n; ++u) {
            const auto& inc = g.incident(u);
            // One representative pair per (x, y) neighbour combination.
            std::vector<std::pair<Vertex, Vertex>> seen;
            for (std::size_t i = 0; i < inc.size(); ++i)
                for (std::size_t j = i + 1; j < inc.size(); ++j) {
                    Vertex x = g.edge(inc[i]).other(u), y = g.edge(inc[j]).other(u);
                    std::pair<Vertex, Vertex> key{std::min(x, y), std::max(x, y)};
                    if (std::find(seen.begin(), seen.end(), key) != seen.end())
                        continue;
                    seen.push_back(key);
                    auto sub = check_lift_invariance(g, p, u, inc[i], inc[j]);
                    r.checks += sub.checks;
                    for (const auto& f : sub.failures)
                        fail(r, f);
                }
        }
    }
    return r;
}

}  // namespace modk
