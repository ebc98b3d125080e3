#include "modk/probes.hpp"

#include "modk/alpha.hpp"
#include "modk/connectivity.hpp"
#include "modk/generators.hpp"
#include "modk/orientation.hpp"
#include "modk/suites.hpp"
#include "modk/tree_packing.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace modk {

namespace {

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

template <typename Gen, typename Pred>
MultiGraph draw(Rng& rng, Gen gen, Pred pred)
{
    for (int attempt = 0; attempt < 10000; ++attempt) {
        MultiGraph g = gen(rng);
        if (pred(g))
            return g;
    }
    throw std::invalid_argument("probe ensemble cannot meet its premise at these parameters");
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

// An orientation question: does g have a p-orientation inside the bounds?
struct Question {
    MultiGraph g;
    ResidueMap p;
    BoundSpec bounds;
    std::string payload;
};

// Same graph with the edge list reversed, so the search branches in another
// order. Vertex numbering and per-vertex windows are unchanged.
MultiGraph reversed_order(const MultiGraph& g)
{
    MultiGraph r(g.vertex_count());
    auto edges = g.edges();
    for (auto it = edges.rbegin(); it != edges.rend(); ++it)
        r.add_edge(it->u, it->v);
    return r;
}

struct Budget {
    long long left;
    long long used = 0;
    bool exhausted = false;

    // Charges n nodes; false once the budget is gone.
    bool charge(long long n)
    {
        used += n;
        left -= n;
        if (left < 0)
            exhausted = true;
        return !exhausted;
    }
};

// nullopt: budget ran out. true: orientation exists. false: verified absent.
std::optional<bool> decide(const Question& q, Budget& budget)
{
    if (budget.left <= 0) {
        budget.exhausted = true;
        return std::nullopt;
    }
    SearchOptions o;
    o.node_budget = budget.left;
    auto first = orient_mod_k_search(q.g, q.p, q.bounds, o);
    if (!budget.charge(first.nodes) || first.outcome == SearchOutcome::budget_exhausted) {
        budget.exhausted = true;
        return std::nullopt;
    }
    if (first.outcome == SearchOutcome::found) {
        if (!verify_orientation(q.g, first.orientation, q.p, q.bounds).ok)
            throw std::logic_error("probe: search returned an orientation that fails verification");
        return true;
    }
    if (budget.left <= 0) {
        budget.exhausted = true;
        return std::nullopt;
    }
    o.node_budget = budget.left;
    auto second = orient_mod_k_search(reversed_order(q.g), q.p, q.bounds, o);
    if (!budget.charge(second.nodes) || second.outcome == SearchOutcome::budget_exhausted) {
        budget.exhausted = true;
        return std::nullopt;
    }
    if (second.outcome == SearchOutcome::found)
        throw std::logic_error("probe: the two search orders disagree");
    return false;
}

Question conj_2k_1(const ProbeParams& pr, Rng& rng)
{
    if (pr.k < 3)
        throw std::invalid_argument("conj-2k-1 needs k >= 3");
    int lambda = pr.weaken ? 2 * pr.k - 2 : 2 * pr.k - 1;
    int cycles = (lambda + 1) / 2;
    auto g = draw(rng, [&](Rng& r) { return random_cycles_union(pr.n, cycles, r); },
                  [&](const MultiGraph& h) { return is_lambda_edge_connected(h, lambda); });
    auto p = random_residues(g, pr.k, rng);
    return {g, p, BoundSpec::floor_ceil_offset(pr.k - 1), graph_payload(g) + " p=" + join(p.values)};
}

// d+ in {d/2 - k, d/2 + k}: residue d/2 + k mod 2k inside [d/2 - k, d/2 + k].
Question plus_minus_k(const MultiGraph& g, int k)
{
    int n = g.vertex_count();
    std::vector<int> p(n), lo(n), hi(n);
    for (Vertex v = 0; v < n; ++v) {
        int h = g.degree(v) / 2;
        p[v] = residue(h + k, 2 * k);
        lo[v] = h - k;
        hi[v] = h + k;
    }
    return {g, ResidueMap(2 * k, p), BoundSpec::interval(lo, hi), graph_payload(g)};
}

int even_order_cycles(const ProbeParams& pr)
{
    if (pr.k < 1)
        throw std::invalid_argument("probe needs k >= 1");
    if (pr.n % 2 != 0)
        throw std::invalid_argument("probe needs an even vertex count");
    int cycles = pr.weaken ? 2 * pr.k - 2 : 2 * pr.k - 1;
    if (cycles < 1)
        throw std::invalid_argument("weakened premise is empty for k = 1");
    return cycles;
}

Question que_4k_2(const ProbeParams& pr, Rng& rng)
{
    int cycles = even_order_cycles(pr);
    auto g = draw(rng, [&](Rng& r) { return random_cycles_union(pr.n, cycles, r); },
                  [&](const MultiGraph& h) { return is_lambda_edge_connected(h, 2 * cycles); });
    return plus_minus_k(g, pr.k);
}

Question que_odd_sets(const ProbeParams& pr, Rng& rng)
{
    int cycles = even_order_cycles(pr);
    // Odd sets only: d(A) >= 2 * cycles when |A| is odd, no even-set bound.
    auto g = draw(rng, [&](Rng& r) { return random_cycles_union(pr.n, cycles, r); },
                  [&](const MultiGraph& h) {
                      return is_parity_edge_connected(h, 0, cycles, ParityMode::set_cardinality).holds();
                  });
    return plus_minus_k(g, pr.k);
}

Question conj_k_tree(const ProbeParams& pr, Rng& rng)
{
    if (pr.k < 1)
        throw std::invalid_argument("conj-k-tree needs k >= 1");
    const int n = pr.n, k = pr.k, m = pr.weaken ? k - 1 : k;
    auto g = draw(rng, [&](Rng& r) { return random_multigraph(n, std::max(1, m * (n - 1)) + below(r, n), r); },
                  [&](const MultiGraph& h) { return m == 0 || is_tree_connected(h, m); });
    auto p = random_residues(g, k, rng);
    std::vector<int> s(n), lo(n), hi(n);
    for (auto& x : s)
        x = below(rng, 2);
    const Vertex z0 = 0;
    int smax = 0, smin = 1;
    for (Vertex v = 1; v < n; ++v) {
        smax = std::max(smax, s[v]);
        smin = std::min(smin, s[v]);
        lo[v] = s[v];
        hi[v] = g.degree(v) - 1 + s[v];
    }
    lo[z0] = 1 - smax;
    hi[z0] = g.degree(z0) - smin;
    return {g, p, BoundSpec::interval(lo, hi), graph_payload(g) + " p=" + join(p.values) + " s=" + join(s) + " z0=0"};
}

// Spanning connectivity of an edge mask, by union-find.
bool spans(const MultiGraph& g, const std::vector<Edge>& edges, std::uint32_t mask, bool complement)
{
    std::vector<int> parent(g.vertex_count());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    int parts = g.vertex_count();
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (((mask >> i) & 1u) == (complement ? 1u : 0u))
            continue;
        int a = find(edges[i].u), b = find(edges[i].v);
        if (a != b) {
            parent[a] = b;
            --parts;
        }
    }
    return parts == 1;
}

bool delta5_split(const MultiGraph& g, const std::vector<Edge>& edges, std::uint32_t mask)
{
    std::vector<int> deg(g.vertex_count(), 0);
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (mask >> i & 1u)
            if (++deg[edges[i].u] > 3 || ++deg[edges[i].v] > 3)
                return false;
    return spans(g, edges, mask, false) && spans(g, edges, mask, true);
}

// Exhaustive over G2 subsets; the mask order is the enumeration order.
std::optional<bool> decide_delta5(const MultiGraph& g, Budget& budget)
{
    auto edges = g.edges();
    const std::uint32_t end = 1u << edges.size();
    for (int pass = 0; pass < 2; ++pass) {
        bool found = false;
        for (std::uint32_t i = 0; i < end; ++i) {
            if (!budget.charge(1))
                return std::nullopt;
            std::uint32_t mask = pass == 0 ? i : end - 1 - i;
            if (delta5_split(g, edges, mask)) {
                found = true;
                break;
            }
        }
        if (found && pass == 0)
            return true;
        if (found)
            throw std::logic_error("probe: the two enumeration orders disagree");
    }
    return false;
}

MultiGraph delta5_graph(const ProbeParams& pr, Rng& rng)
{
    const int n = pr.n, lambda = pr.weaken ? 3 : 4;
    if (n < 2)
        throw std::invalid_argument("conj-delta5 needs n >= 2");
    auto gen = [&](Rng& r) {
        auto g = random_cycles_union(n, pr.weaken ? 1 : 2, r);
        std::vector<Vertex> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), r);
        int extra = pr.weaken ? n / 2 : below(r, n / 2 + 1);
        for (int i = 0; i < extra; ++i)
            g.add_edge(perm[2 * i], perm[2 * i + 1]);
        return g;
    };
    auto g = draw(rng, gen, [&](const MultiGraph& h) {
        for (Vertex v = 0; v < n; ++v)
            if (h.degree(v) > 5)
                return false;
        return is_lambda_edge_connected(h, lambda);
    });
    if (g.edge_count() > 24)
        throw std::invalid_argument("conj-delta5 enumerates edge subsets; keep |E| <= 24");
    return g;
}

}  // namespace

const std::vector<std::string>& probe_ids()
{
    static const std::vector<std::string> ids{"conj-2k-1", "que-4k-2", "que-odd-sets", "conj-k-tree", "conj-delta5"};
    return ids;
}

ProbeReport probe_conjecture(const std::string& id, const ProbeParams& params)
{
    if (std::find(probe_ids().begin(), probe_ids().end(), id) == probe_ids().end())
        throw std::invalid_argument("unknown probe '" + id + "'");
    if (params.count < 0 || params.budget < 0 || params.n < 2 || params.n > 12)
        throw std::invalid_argument("probe parameters out of range (count, budget >= 0; 2 <= n <= 12)");
    ProbeReport report;
    report.id = id;
    report.params = params;
    Budget budget{params.budget};
    for (int i = 0; i < params.count; ++i) {
        if (budget.left <= 0) {
            budget.exhausted = true;
            break;
        }
        Rng rng = instance_rng(params.seed, static_cast<std::uint64_t>(i));
        std::optional<bool> holds;
        std::string payload;
        if (id == "conj-delta5") {
            auto g = delta5_graph(params, rng);
            payload = graph_payload(g);
            holds = decide_delta5(g, budget);
        } else {
            Question q = id == "conj-2k-1"   ? conj_2k_1(params, rng)
                         : id == "que-4k-2"  ? que_4k_2(params, rng)
                         : id == "que-odd-sets" ? que_odd_sets(params, rng)
                                             : conj_k_tree(params, rng);
            payload = q.payload;
            holds = decide(q, budget);
        }
        if (!holds)
            break;
        ++report.checked;
        if (!*holds)
            report.counterexamples.push_back({i, payload});
    }
    report.nodes = budget.used;
    report.budget_exhausted = budget.exhausted;
    return report;
}

std::string ProbeReport::verdict() const
{
    if (!counterexamples.empty())
        return "counterexample";
    return budget_exhausted ? "none found within budget" : "none found";
}

std::string ProbeReport::text() const
{
    std::ostringstream out;
    out << "probe " << id << '\n'
        << "seed " << params.seed << '\n'
        << "k " << params.k << '\n'
        << "n " << params.n << '\n'
        << "count " << params.count << '\n'
        << "weakened " << (params.weaken ? 1 : 0) << '\n'
        << "budget " << params.budget << '\n'
        << "checked " << checked << '\n'
        << "nodes " << nodes << '\n'
        << "budget_exhausted " << (budget_exhausted ? 1 : 0) << '\n'
        << "result " << verdict() << '\n';
    for (const auto& c : counterexamples)
        out << "counterexample " << c.index << ' ' << c.payload << '\n';
    return out.str();
}

}  // namespace modk
