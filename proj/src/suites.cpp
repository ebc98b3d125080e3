#include "modk/suites.hpp"

#include "modk/alpha.hpp"
#include "modk/connectivity.hpp"
#include "modk/decomposition.hpp"
#include "modk/factor.hpp"
#include "modk/generators.hpp"
#include "modk/lifting.hpp"
#include "modk/orientation.hpp"
#include "modk/tree_packing.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace modk {

namespace {

struct Outcome {
    InstanceStatus status = InstanceStatus::pass;
    std::string detail;
};

// Thrown inside an instance to record a failure with its payload.
struct Failure {
    std::string detail;
};

struct BudgetHit {};

void require(bool cond, const std::string& what)
{
    if (!cond)
        throw Failure{what};
}

int below(Rng& rng, int n)
{
    return static_cast<int>(rng() % static_cast<std::uint64_t>(n));
}

std::string join(const std::vector<int>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

std::vector<int> degrees(const MultiGraph& g)
{
    std::vector<int> d(g.vertex_count());
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        d[v] = g.degree(v);
    return d;
}

ResidueMap random_residues(const MultiGraph& g, int k, Rng& rng)
{
    std::vector<int> p(g.vertex_count());
    long long sum = 0;
    for (auto& x : p)
        sum += x = below(rng, k);
    p[0] = residue(p[0] + g.edge_count() - sum, k);
    return ResidueMap(k, p);
}

Orientation random_orientation(const MultiGraph& g, Rng& rng)
{
    Orientation d(g);
    for (auto e : g.edge_ids())
        d.set(e, rng() % 2 ? Dir::forward : Dir::backward);
    return d;
}

// Draws until the predicate holds; every suite instance is conditioned this way.
template <typename Gen, typename Pred>
MultiGraph draw(Rng& rng, Gen gen, Pred pred, const char* what)
{
    for (int attempt = 0; attempt < 10000; ++attempt) {
        MultiGraph g = gen(rng);
        if (pred(g))
            return g;
    }
    throw std::runtime_error(std::string("could not draw a ") + what + " instance");
}

SearchOptions budgeted(long long budget)
{
    SearchOptions o;
    o.node_budget = budget;
    return o;
}

SearchResult search(const MultiGraph& g, const ResidueMap& p, const BoundSpec& b, long long budget)
{
    auto r = orient_mod_k_search(g, p, b, budgeted(budget));
    if (r.outcome == SearchOutcome::budget_exhausted)
        throw BudgetHit{};
    return r;
}

void require_orientation(const MultiGraph& g, const Orientation& d, const ResidueMap& p, const BoundSpec& b,
                         const std::string& what)
{
    auto c = verify_orientation(g, d, p, b);
    if (!c.ok)
        throw Failure{what + ": " + (c.violations.empty() ? std::string("rejected") : c.violations.front()) + " " +
                      graph_payload(g) + " p=" + join(p.values)};
}

// Criterion suites. Each draws its instance from the per-index stream.

Outcome mod2_exhaustive(int, Rng& rng, long long)
{
    int n = 2 + below(rng, 4);
    auto g = draw(
        rng,
        [&](Rng& r) { return random_multigraph(n, n + below(r, 9 - n), r); },
        [](const MultiGraph& h) { return is_lambda_edge_connected(h, 2); }, "2-edge-connected");
    const int m = g.edge_count();
    auto offset = BoundSpec::floor_ceil_offset(1);
    for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
        std::vector<int> pv(n);
        int sum = 0;
        for (int v = 0; v < n; ++v)
            sum += pv[v] = (bits >> v) & 1;
        if (sum % 2 != m % 2)
            continue;
        ResidueMap p(2, pv);
        require_orientation(g, orient_mod2_bounded(g, p), p, offset, "unpinned");
        for (Vertex z = 0; z < n; ++z) {
            int d = g.degree(z);
            for (int t = std::max(0, d / 2 - 1); t <= std::min(d, (d + 1) / 2 + 1); ++t) {
                if (t % 2 != pv[z])
                    continue;
                auto o = orient_mod2_bounded(g, p, z, t);
                require_orientation(g, o, p, offset.pinned(z, t),
                                    "pin z0=" + std::to_string(z) + " target=" + std::to_string(t));
            }
        }
    }
    return {InstanceStatus::pass, ""};
}

Outcome alpha_props(int, Rng& rng, long long)
{
    int k = 3 + below(rng, 3), n = 2 + below(rng, 7);
    auto g = random_multigraph(n, n - 1 + below(rng, 2 * n), rng);
    auto p = random_residues(g, k, rng);
    auto r = check_alpha_properties(g, p, true);
    require(r.ok, (r.failures.empty() ? std::string("failed") : r.failures.front()) + " " + graph_payload(g) +
                      " k=" + std::to_string(k) + " p=" + join(p.values));
    return {};
}

Outcome k8_negative(int, Rng&, long long budget)
{
    auto g = complete_graph(8);
    auto even = search(g, ResidueMap::constant(2, 8, 0), BoundSpec::uniform(8, 4, 6), budget);
    require(even.outcome == SearchOutcome::infeasible, "K8 has an orientation with out-degrees in {4,6}");
    auto odd = search(g, ResidueMap::constant(2, 8, 1), BoundSpec::uniform(8, 1, 3), budget);
    require(odd.outcome == SearchOutcome::infeasible, "K8 has an orientation with out-degrees in {1,3}");
    return {};
}

void require_stars(const MultiGraph& g, const StarDecomposition& sd, int k)
{
    std::set<EdgeId> seen;
    for (const auto& s : sd.stars) {
        require(static_cast<int>(s.edges.size()) == k, "star of wrong size");
        for (auto e : s.edges) {
            require(g.edge(e).touches(s.center), "star edge misses its center");
            require(seen.insert(e).second, "edge in two stars");
        }
    }
    require(static_cast<int>(seen.size()) == g.edge_count(), "stars do not cover E");
}

Outcome star_equivalence(int index, Rng& rng, long long budget)
{
    if (index == 0) {
        require(!star_decomposition(complete_graph(4), 3, budget).feasible, "K4 has a 3-star decomposition");
        auto k33 = complete_bipartite(3, 3);
        auto sd = star_decomposition(k33, 3, budget);
        require(sd.feasible, "K3,3 has no 3-star decomposition");
        require_stars(k33, sd, 3);
    }
    int k = 2 + below(rng, 2), n = 3 + below(rng, 4);
    int m = k * (2 + below(rng, 4));
    if (m > 14)
        m -= k;
    auto g = random_multigraph(n, m, rng);
    auto sd = star_decomposition(g, k, budget);
    std::vector<int> lo(n, 0);
    auto ref = search(g, ResidueMap::constant(k, n, 0), BoundSpec::interval(lo, degrees(g)), budget);
    bool oracle_ok = ref.outcome == SearchOutcome::found;
    require(sd.feasible == oracle_ok, "star decomposition disagrees with orientation search: " + graph_payload(g) +
                                          " k=" + std::to_string(k));
    if (sd.feasible)
        require_stars(g, sd, k);
    return {};
}

Outcome branchings(int, Rng& rng, long long)
{
    int m = 1 + below(rng, 2), n = 2 + below(rng, 6);
    auto g = draw(
        rng, [&](Rng& r) { return random_cycles_union(n, m + below(r, 2), r); },
        [&](const MultiGraph& h) { return is_lambda_edge_connected(h, 2 * m); }, "2m-edge-connected");
    std::vector<int> roots(n, 0);
    for (int j = 0; j < m; ++j)
        ++roots[below(rng, n)];
    Vertex z0 = static_cast<Vertex>(below(rng, n));
    auto kind = rng() % 2 ? BranchingKind::in : BranchingKind::out;
    auto b = disjoint_branchings(g, roots, kind, z0);
    auto c = verify_branchings(g, b, roots, z0, true);
    require(c.ok, c.reason + " " + graph_payload(g) + " roots=" + join(roots) + " z0=" + std::to_string(z0));
    return {};
}

Outcome eulerian_rule(int, Rng& rng, long long)
{
    int n = 2 + below(rng, 5);
    auto g = draw(
        rng, [&](Rng& r) { return random_multigraph(n, n - 1 + below(r, 10), r); },
        [](const MultiGraph& h) { return is_connected(h); }, "connected");
    auto d = random_orientation(g, rng);
    auto ids = g.edge_ids();
    std::vector<EdgeId> f1, f2;
    for (auto e : ids) {
        int c = below(rng, 4);
        if (c == 0)
            f1.push_back(e);
        else if (c == 1)
            f2.push_back(e);
    }
    if (f1.empty() && f2.empty())
        f1.push_back(ids.front());
    auto out = subset_out_degrees(g, d, ids), in = subset_in_degrees(g, d, ids);
    std::vector<int> s1(n), s2(n);
    for (Vertex v = 0; v < n; ++v) {
        int x = std::max(0, out[v] - in[v]);
        int a = x == 0 ? 0 : below(rng, x + 1);
        s1[v] = a + below(rng, 2);
        s2[v] = x - a;
    }
    auto r = eulerian_rule_decomposition(g, d, f1, f2, s1, s2);
    std::string why;
    auto payload = [&] { return graph_payload(g) + " s1=" + join(s1) + " s2=" + join(s2); };
    require(rule_windows_hold(g, d, f1, f2, s1, s2, r.g1, &why), "windows: " + why + " " + payload());
    std::set<EdgeId> g1(r.g1.begin(), r.g1.end()), g2(r.g2.begin(), r.g2.end());
    require(g1.size() + g2.size() == ids.size() && std::includes(g1.begin(), g1.end(), f1.begin(), f1.end()) &&
                std::includes(g2.begin(), g2.end(), f2.begin(), f2.end()),
            "split is not a partition containing F1 and F2 " + payload());
    if (ids.size() <= 12) {
        // Every superset G1 of F1 avoiding F2: the split found must be one of
        // the valid ones, and valid ones must exist.
        std::vector<EdgeId> free;
        std::set<EdgeId> fixed(f1.begin(), f1.end());
        fixed.insert(f2.begin(), f2.end());
        for (auto e : ids)
            if (!fixed.count(e))
                free.push_back(e);
        int valid = 0;
        bool found_listed = false;
        for (std::uint32_t bits = 0; bits < (1u << free.size()); ++bits) {
            std::vector<EdgeId> cand = f1;
            for (std::size_t i = 0; i < free.size(); ++i)
                if (bits >> i & 1)
                    cand.push_back(free[i]);
            std::sort(cand.begin(), cand.end());
            if (!rule_windows_hold(g, d, f1, f2, s1, s2, cand))
                continue;
            ++valid;
            found_listed |= std::vector<EdgeId>(g1.begin(), g1.end()) == cand;
        }
        require(valid > 0 && found_listed, "enumeration disagrees with the rule walk " + payload());
    }
    return {};
}

Outcome spanning_eulerian(int index, Rng&, long long)
{
    int n = 11 + index % 3;
    auto g = circulant(n, {1, 2, 3, 4, 5});
    auto h = spanning_eulerian_subgraph(g);
    auto deg = subset_degrees(g, h.edges);
    for (Vertex v = 0; v < n; ++v)
        require(deg[v] == 4 || deg[v] == 6, "degree " + std::to_string(deg[v]) + " at " + std::to_string(v) +
                                                " in circulant " + std::to_string(n));
    require(is_connected(edge_subgraph(g, h.edges)), "factor is not connected");
    return {};
}

Outcome bipartite_correspondence(int index, Rng& rng, long long budget)
{
    if (index % 10 == 0) {
        auto g = scaled(complete_bipartite(3, 3), 2);
        std::vector<int> side;
        is_bipartite(g, &side);
        std::vector<int> f(6);
        for (auto& x : f)
            x = below(rng, 3);
        int diff = 0;
        for (Vertex v = 0; v < 6; ++v)
            diff += side[v] == 0 ? f[v] : -f[v];
        f[0] = residue(f[0] - (side[0] == 0 ? diff : -diff), 3);
        HybridOptions opt;
        opt.node_budget = budget;
        auto h = bipartite_f_factor(g, ResidueMap(3, f), Regime::edge_3k3, std::nullopt, std::nullopt, opt);
        auto deg = subset_degrees(g, h.edges);
        for (Vertex v = 0; v < 6; ++v) {
            int d = g.degree(v);
            require(deg[v] % 3 == f[v] && deg[v] >= d / 2 - 2 && deg[v] <= (d + 1) / 2 + 2,
                    "doubled K3,3 factor outside the window, f=" + join(f));
        }
        return {};
    }
    int a = 1 + below(rng, 3), b = 1 + below(rng, 3);
    MultiGraph g(a + b);
    int m = 1 + below(rng, 10);
    for (int i = 0; i < m; ++i)
        g.add_edge(below(rng, a), a + below(rng, b));
    std::vector<int> side(a + b, 0);
    for (int v = a; v < a + b; ++v)
        side[v] = 1;
    auto d = random_orientation(g, rng);
    auto h = factor_from_orientation(g, side, d);
    auto back = orientation_from_factor(g, side, h);
    for (auto e : g.edge_ids())
        require(back.get(e) == d.get(e), "orientation round trip differs at edge " + std::to_string(e));
    auto again = factor_from_orientation(g, side, back);
    std::sort(h.begin(), h.end());
    std::sort(again.begin(), again.end());
    require(h == again, "factor round trip differs");
    auto deg = subset_degrees(g, h), out = d.out_degrees(g);
    for (Vertex v = 0; v < a + b; ++v)
        require(deg[v] == (side[v] == 0 ? out[v] : g.degree(v) - out[v]), "degree correspondence fails");
    return {};
}

Outcome catlin_and_packing(int index, Rng& rng, long long)
{
    int m = 1 + below(rng, 2), n = 2 + below(rng, 6);
    auto gen = [&](Rng& r) {
        auto h = random_cycles_union(n, m + below(r, 2), r);
        // An extra edge gives two odd vertices.
        if (n > 2 && r() % 2) {
            Vertex a = static_cast<Vertex>(below(r, n));
            h.add_edge(a, static_cast<Vertex>((a + 1 + below(r, n - 1)) % n));
        }
        return h;
    };
    auto g = draw(rng, gen, [&](const MultiGraph& h) { return is_lambda_edge_connected(h, 2 * m); },
                  "2m-edge-connected");
    auto ids = g.edge_ids();
    std::shuffle(ids.begin(), ids.end(), rng);
    std::vector<EdgeId> avoid(ids.begin(), ids.begin() + m);
    std::optional<Vertex> z0;
    if (index % 3 != 0)
        z0 = static_cast<Vertex>(below(rng, n));
    auto c = catlin_factor(g, m, avoid, z0);
    auto payload = graph_payload(g) + " m=" + std::to_string(m);
    require(verify_packing(g, c.packing, m), "catlin packing rejected " + payload);
    std::set<EdgeId> banned(avoid.begin(), avoid.end());
    if (c.excluded) {
        require(z0 && g.edge(*c.excluded).touches(*z0), "excluded edge is not at z0 " + payload);
        banned.insert(*c.excluded);
    }
    if (z0 && g.degree(*z0) % 2 == 1)
        require(c.excluded.has_value(), "odd z0 without an excluded edge " + payload);
    for (const auto& t : c.packing.trees)
        for (auto e : t)
            require(!banned.count(e), "tree uses an avoided edge " + payload);

    int mp = 1 + below(rng, 3);
    auto r = spanning_tree_packing(g, mp);
    require(r.packing.has_value() != r.deficiency.has_value(), "packing and deficiency not exclusive");
    if (r.packing)
        require(verify_packing(g, *r.packing, mp), "packing rejected " + payload);
    else
        require(verify_deficiency(g, *r.deficiency, mp), "deficiency rejected " + payload);
    return {};
}

Outcome lifting_preservation(int index, Rng& rng, long long)
{
    int mode = index % 3;
    for (int attempt = 0; attempt < 10000; ++attempt) {
        int n = 3 + below(rng, 4);
        auto g = random_cycles_union(n, 2 + below(rng, 2), rng);
        Vertex u = static_cast<Vertex>(below(rng, n));
        int lam = std::min(edge_connectivity(g).lambda, g.degree(u) - 2);
        auto payload = [&] { return graph_payload(g) + " u=" + std::to_string(u); };
        if (mode == 0 && lam >= 2) {
            auto [a, b] = find_admissible_lift(g, u, LiftMode::lambda(lam));
            require(is_lambda_edge_connected(lifted_copy(g, u, a, b), lam), "lambda lift " + payload());
        } else if (mode == 1 && lam >= 2 &&
                   is_parity_edge_connected(g, lam / 2, lam / 2, ParityMode::cut_parity, u).holds()) {
            auto [a, b] = find_admissible_lift(g, u, LiftMode::parity(lam / 2, lam / 2));
            require(is_parity_edge_connected(lifted_copy(g, u, a, b), lam / 2, lam / 2, ParityMode::cut_parity, u)
                        .holds(),
                    "parity lift " + payload());
        } else if (mode == 2) {
            int np = (g.degree(u) - 2) / 2;
            if (np < 1 || !is_parity_edge_connected(g, np, np, ParityMode::set_cardinality, u).holds())
                continue;
            auto [a, b] = find_admissible_lift(g, u, LiftMode::size_parity(np, np));
            require(is_parity_edge_connected(lifted_copy(g, u, a, b), np, np, ParityMode::set_cardinality, u)
                        .holds(),
                    "size-parity lift " + payload());
        } else {
            continue;
        }
        if (index % 4 == 0) {
            int m = 1 + below(rng, 2);
            auto h = random_cycles_union(n, m, rng);
            if (is_tree_connected(h, m))
                for (Vertex v = 0; v < n; ++v) {
                    if (h.degree(v) > 2 * m)
                        continue;
                    auto s = split_off_tree_connected(h, v, m);
                    require(s.lifts <= h.degree(v) - m, "split off used too many lifts");
                    require(is_tree_connected(s.graph, m), "split off lost tree-connectivity");
                }
        }
        return {};
    }
    throw std::runtime_error("could not draw a liftable instance");
}

Outcome hybrid_vs_oracle(int index, Rng& rng, long long budget)
{
    Regime r = static_cast<Regime>(index % 3);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        int k = 3 + below(rng, 2);
        MultiGraph g;
        if (r == Regime::edge_3k3) {
            k = 3;
            g = random_cycles_union(3 + below(rng, 3), 3, rng);
        } else if (r == Regime::tree_2k2) {
            k = 3;
            int n = 2 + below(rng, 3);
            g = random_multigraph(n, std::min(16, 4 * (n - 1) + below(rng, 5)), rng);
        } else {
            int n = 3 + below(rng, 3);
            g = random_multigraph(n, 8 + below(rng, 8), rng);
        }
        if (g.edge_count() > 16)
            continue;
        auto p = random_residues(g, k, rng);
        if (!regime_precondition(g, p, r))
            continue;
        auto bounds = regime_bounds(r);
        auto payload = graph_payload(g) + " k=" + std::to_string(k) + " p=" + join(p.values) + " regime=" +
                       regime_name(r);
        auto ref = search(g, p, bounds, budget);
        require(ref.outcome == SearchOutcome::found, "oracle finds no orientation under the regime " + payload);
        HybridOptions opt;
        opt.node_budget = budget;
        HybridResult h;
        try {
            h = orient_mod_k_bounded(g, p, r, std::nullopt, std::nullopt, opt);
        } catch (const BudgetExhausted&) {
            throw BudgetHit{};
        } catch (const std::exception& e) {
            throw Failure{std::string("hybrid failed where the oracle succeeds: ") + e.what() + " " + payload};
        }
        require_orientation(g, h.orientation, p, bounds, "hybrid output");
        return {};
    }
    throw std::runtime_error("could not draw a regime instance");
}

using SuiteFn = Outcome (*)(int, Rng&, long long);

struct SuiteDef {
    SuiteFn fn;
    int default_count;
};

const std::map<std::string, SuiteDef>& registry()
{
    static const std::map<std::string, SuiteDef> r{
        {"mod2-exhaustive", {mod2_exhaustive, 500}},
        {"alpha-props", {alpha_props, 200}},
        {"k8-negative", {k8_negative, 1}},
        {"star-equivalence", {star_equivalence, 300}},
        {"branchings", {branchings, 200}},
        {"eulerian-rule", {eulerian_rule, 300}},
        {"spanning-eulerian-10-regular", {spanning_eulerian, 3}},
        {"bipartite-correspondence", {bipartite_correspondence, 300}},
        {"catlin-and-packing", {catlin_and_packing, 200}},
        {"lifting-preservation", {lifting_preservation, 500}},
        {"hybrid-vs-oracle", {hybrid_vs_oracle, 300}},
    };
    return r;
}

const char* status_name(InstanceStatus s)
{
    switch (s) {
    case InstanceStatus::pass:
        return "pass";
    case InstanceStatus::fail:
        return "fail";
    case InstanceStatus::budget:
        return "budget";
    }
    return "?";
}

}  // namespace

std::string graph_payload(const MultiGraph& g)
{
    std::string s = "n=" + std::to_string(g.vertex_count()) + " e=";
    bool first = true;
    for (const auto& e : g.edges()) {
        s += (first ? "" : ",") + std::to_string(e.u) + "-" + std::to_string(e.v);
        first = false;
    }
    return s;
}

const std::vector<std::string>& suite_ids()
{
    static const std::vector<std::string> ids{
        "mod2-exhaustive", "alpha-props",     "k8-negative",          "star-equivalence",
        "branchings",      "eulerian-rule",   "spanning-eulerian-10-regular", "bipartite-correspondence",
        "catlin-and-packing", "lifting-preservation", "hybrid-vs-oracle"};
    return ids;
}

int suite_default_count(const std::string& id)
{
    auto it = registry().find(id);
    if (it == registry().end())
        throw std::invalid_argument("unknown suite '" + id + "'");
    return it->second.default_count;
}

SuiteReport run_suite(const std::string& id, std::uint64_t seed, const SuiteParams& params)
{
    auto it = registry().find(id);
    if (it == registry().end())
        throw std::invalid_argument("unknown suite '" + id + "'");
    if (params.count < 0 || params.threads < 0 || params.budget < 0)
        throw std::invalid_argument("suite parameters must be nonnegative");
    const SuiteDef def = it->second;
    const int count = params.count > 0 ? params.count : def.default_count;
    int threads = params.threads > 0 ? params.threads : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::clamp(threads, 1, std::max(1, count));

    SuiteReport report;
    report.id = id;
    report.seed = seed;
    report.instances = count;
    report.records.resize(count);
    auto start = std::chrono::steady_clock::now();

    std::atomic<int> next{0};
    auto work = [&] {
        for (int i = next++; i < count; i = next++) {
            Rng rng = instance_rng(seed, static_cast<std::uint64_t>(i));
            InstanceRecord rec;
            rec.index = i;
            try {
                auto o = def.fn(i, rng, params.budget);
                rec.status = o.status;
                rec.detail = o.detail;
            } catch (const Failure& f) {
                rec.status = InstanceStatus::fail;
                rec.detail = f.detail;
            } catch (const BudgetHit&) {
                rec.status = InstanceStatus::budget;
                rec.detail = "search budget exhausted";
            } catch (const BudgetExhausted& e) {
                rec.status = InstanceStatus::budget;
                rec.detail = e.what();
            } catch (const std::exception& e) {
                rec.status = InstanceStatus::fail;
                rec.detail = std::string("exception: ") + e.what();
            }
            report.records[i] = std::move(rec);
        }
    };
    {
        std::vector<std::jthread> pool;
        for (int t = 1; t < threads; ++t)
            pool.emplace_back(work);
        work();
    }
    for (const auto& r : report.records) {
        report.failures += r.status == InstanceStatus::fail;
        report.budget_hits += r.status == InstanceStatus::budget;
    }
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::string SuiteReport::text(bool with_timing) const
{
    std::ostringstream out;
    out << "suite " << id << '\n'
        << "seed " << seed << '\n'
        << "instances " << instances << '\n'
        << "failures " << failures << '\n'
        << "budget_exhausted " << budget_hits << '\n'
        << "result " << (failures ? "FAIL" : budget_hits ? "BUDGET" : "PASS") << '\n';
    for (const auto& r : records) {
        out << "instance " << r.index << ' ' << status_name(r.status);
        if (!r.detail.empty())
            out << ' ' << r.detail;
        out << '\n';
    }
    if (with_timing)
        out << "seconds " << std::fixed << std::setprecision(3) << seconds << '\n';
    return out.str();
}

}  // namespace modk
