#include "modk/orientation.hpp"

#include "modk/connectivity.hpp"
#include "modk/lifting.hpp"
#include "modk/tree_packing.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace modk {

namespace {

int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }
int ceil_div(int a, int b) { return -floor_div(-a, b); }

// Copies directions of `h` edges onto the same ids in g; map sends g vertices
// to h vertices.
void pull_back(const MultiGraph& g, const std::vector<Vertex>& map, const MultiGraph& h, const Orientation& oh,
               Orientation& og)
{
    for (auto e : h.edge_ids()) {
        if (!oh.is_set(e) || !g.has_edge(e))
            continue;
        const Edge& ge = g.edge(e);
        Vertex t = oh.tail(h, e);
        og.direct(g, e, map[ge.u] == t ? ge.u : ge.v);
    }
}

struct SearchStopped {};

class Searcher {
public:
    Searcher(const MultiGraph& g, const ResidueMap& p, const BoundSpec& b, const SearchOptions& opt)
        : g_(g), opt_(opt), n_(g.vertex_count()), total_(g.edge_count()), out_(n_, 0), rem_(n_, 0), targets_(n_),
          result_(g)
    {
        for (Vertex v = 0; v < n_; ++v) {
            auto [lo, hi] = b.window(g, p, v);
            for (int t = std::max(lo, 0); t <= hi; ++t)
                if (residue(t, p.k) == p[v])
                    targets_[v].push_back(t);
        }
        for (const auto& e : g.edges()) {
            if (opt.fixed && opt.fixed->is_set(e.id)) {
                result_.set(e.id, opt.fixed->get(e.id));
                ++out_[result_.tail(g, e.id)];
            } else {
                free_.push_back(e);
                ++rem_[e.u];
                ++rem_[e.v];
            }
        }
        taken_.assign(free_.size(), 0);
    }

    SearchResult run()
    {
        SearchResult r;
        bool ok = true;
        for (Vertex v = 0; v < n_ && ok; ++v)
            ok = vertex_ok(v);
        ok = ok && global_ok();
        try {
            if (ok && dfs(0)) {
                r.outcome = SearchOutcome::found;
                r.orientation = result_;
            }
        } catch (const SearchStopped&) {
            r.outcome = SearchOutcome::budget_exhausted;
        }
        r.nodes = nodes_;
        return r;
    }

private:
    // Smallest target reachable from the current state, or -1.
    int low_target(Vertex v) const
    {
        auto it = std::lower_bound(targets_[v].begin(), targets_[v].end(), out_[v]);
        return it != targets_[v].end() && *it <= out_[v] + rem_[v] ? *it : -1;
    }
    int high_target(Vertex v) const
    {
        auto it = std::upper_bound(targets_[v].begin(), targets_[v].end(), out_[v] + rem_[v]);
        if (it == targets_[v].begin())
            return -1;
        --it;
        return *it >= out_[v] ? *it : -1;
    }
    bool vertex_ok(Vertex v) const { return low_target(v) >= 0; }
    bool global_ok() const
    {
        long long lo = 0, hi = 0;
        for (Vertex v = 0; v < n_; ++v) {
            lo += low_target(v);
            hi += high_target(v);
        }
        return lo <= total_ && total_ <= hi;
    }

    bool dfs(int depth)
    {
        ++nodes_;
        if (opt_.node_budget > 0 && nodes_ > opt_.node_budget)
            throw SearchStopped{};
        if ((nodes_ == 1 || (nodes_ & 1023) == 0) && opt_.stop.stop_requested())
            throw SearchStopped{};
        if (depth == static_cast<int>(free_.size()))
            return true;

        // Edge at the endpoint closest to completion, ties by id.
        int pick = -1, best = 0;
        for (int i = 0; i < static_cast<int>(free_.size()); ++i) {
            if (taken_[i])
                continue;
            int s = std::min(rem_[free_[i].u], rem_[free_[i].v]);
            if (pick < 0 || s < best) {
                pick = i;
                best = s;
            }
        }
        const Edge& e = free_[pick];
        auto need = [&](Vertex x) { return 2 * (low_target(x) - out_[x]) - rem_[x]; };
        Vertex first = need(e.u) >= need(e.v) ? e.u : e.v;

        taken_[pick] = 1;
        --rem_[e.u];
        --rem_[e.v];
        for (Vertex tail : {first, e.other(first)}) {
            ++out_[tail];
            if (vertex_ok(e.u) && vertex_ok(e.v) && global_ok()) {
                result_.direct(g_, e.id, tail);
                if (dfs(depth + 1))
                    return true;
            }
            --out_[tail];
        }
        ++rem_[e.u];
        ++rem_[e.v];
        taken_[pick] = 0;
        result_.clear(e.id);
        return false;
    }

    const MultiGraph& g_;
    const SearchOptions& opt_;
    int n_;
    int total_;
    std::vector<int> out_, rem_;
    std::vector<std::vector<int>> targets_;
    std::vector<Edge> free_;
    std::vector<char> taken_;
    Orientation result_;
    long long nodes_ = 0;
};

}  // namespace

BoundSpec BoundSpec::interval(std::vector<int> lo, std::vector<int> hi)
{
    if (lo.size() != hi.size())
        throw std::invalid_argument("BoundSpec: lo and hi differ in length");
    BoundSpec b;
    b.kind = Kind::interval;
    b.lo = std::move(lo);
    b.hi = std::move(hi);
    return b;
}

BoundSpec BoundSpec::uniform(int n, int lo, int hi)
{
    return interval(std::vector<int>(n, lo), std::vector<int>(n, hi));
}

BoundSpec BoundSpec::floor_ceil_offset(int c)
{
    BoundSpec b;
    b.kind = Kind::floor_ceil_offset;
    b.offset = c;
    return b;
}

BoundSpec BoundSpec::alpha_bound()
{
    BoundSpec b;
    b.kind = Kind::alpha_bound;
    return b;
}

BoundSpec BoundSpec::tree_bound()
{
    BoundSpec b;
    b.kind = Kind::tree_bound;
    return b;
}

BoundSpec BoundSpec::pinned(Vertex v, int value) const
{
    BoundSpec b = *this;
    b.pin = v;
    b.pin_value = value;
    return b;
}

std::pair<int, int> BoundSpec::raw_window(const MultiGraph& g, const ResidueMap& p, Vertex v) const
{
    int d = g.degree(v), k = p.k, lo = 0, hi = d;
    switch (kind) {
    case Kind::interval:
        if (static_cast<int>(this->lo.size()) != g.vertex_count())
            throw std::invalid_argument("BoundSpec: interval size does not match the graph");
        lo = this->lo[v];
        hi = this->hi[v];
        break;
    case Kind::floor_ceil_offset:
        lo = d / 2 - offset;
        hi = (d + 1) / 2 + offset;
        break;
    case Kind::alpha_bound: {
        // |2d+ - d| <= 2k - 2 + |2 alpha|
        int slack = 2 * k - 2 + alpha_of_vertex(g, p, v).abs_twice();
        lo = ceil_div(d - slack, 2);
        hi = floor_div(d + slack, 2);
        break;
    }
    case Kind::tree_bound:
        lo = ceil_div(k - 2, 2);
        hi = d - lo;
        break;
    }
    return {std::max(lo, 0), std::min(hi, d)};
}

std::pair<int, int> BoundSpec::window(const MultiGraph& g, const ResidueMap& p, Vertex v) const
{
    auto w = raw_window(g, p, v);
    if (pin && *pin == v) {
        if (pin_value < w.first || pin_value > w.second)
            return {1, 0};
        return {pin_value, pin_value};
    }
    return w;
}

OrientationCheck verify_orientation(const MultiGraph& g, const Orientation& d, const ResidueMap& p,
                                    const BoundSpec& bounds)
{
    OrientationCheck r;
    if (p.size() != g.vertex_count()) {
        r.ok = false;
        r.violations.push_back("residue map size differs from vertex count");
        return r;
    }
    if (!d.is_total(g)) {
        r.ok = false;
        r.violations.push_back("orientation is not total");
        return r;
    }
    auto out = d.out_degrees(g);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (residue(out[v], p.k) != p[v]) {
            r.ok = false;
            r.violations.push_back("vertex " + std::to_string(v) + ": d+ = " + std::to_string(out[v]) +
                                   " not congruent to " + std::to_string(p[v]));
        }
        auto [lo, hi] = bounds.window(g, p, v);
        if (out[v] < lo || out[v] > hi) {
            r.ok = false;
            r.violations.push_back("vertex " + std::to_string(v) + ": d+ = " + std::to_string(out[v]) +
                                   " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
        }
    }
    return r;
}

bool in_half_k_form(const MultiGraph& g, const Orientation& d, int k)
{
    auto out = d.out_degrees(g);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        int t = 2 * out[v] - g.degree(v);
        if (t != 0 && std::abs(t) != k)
            return false;
    }
    return true;
}

bool in_plus_minus_k_form(const MultiGraph& g, const Orientation& d, int k)
{
    auto out = d.out_degrees(g);
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (std::abs(2 * out[v] - g.degree(v)) != 2 * k)
            return false;
    return true;
}

SearchResult orient_mod_k_search(const MultiGraph& g, const ResidueMap& p, const BoundSpec& bounds,
                                 const SearchOptions& options)
{
    if (p.size() != g.vertex_count())
        throw std::invalid_argument("orient_mod_k_search: residue map size differs from vertex count");
    if (!p.matches_edge_count(g))
        throw std::invalid_argument("orient_mod_k_search: sum of p is not congruent to |E|");
    Searcher s(g, p, bounds, options);
    return s.run();
}

Orientation orient_mod2_connected(const MultiGraph& g, const std::vector<int>& parity, const Orientation& fixed)
{
    int n = g.vertex_count();
    Orientation o(g);
    std::vector<int> out(n, 0);
    std::vector<std::vector<EdgeId>> free_inc(n);
    for (const auto& e : g.edges()) {
        if (fixed.is_set(e.id)) {
            o.set(e.id, fixed.get(e.id));
            ++out[o.tail(g, e.id)];
        } else {
            free_inc[e.u].push_back(e.id);
            free_inc[e.v].push_back(e.id);
        }
    }
    if (n == 0)
        return o;

    // BFS spanning tree over free edges.
    std::vector<EdgeId> parent_edge(n, -1);
    std::vector<char> seen(n, 0);
    std::vector<Vertex> order{0};
    seen[0] = 1;
    for (std::size_t i = 0; i < order.size(); ++i) {
        Vertex v = order[i];
        for (auto id : free_inc[v]) {
            Vertex w = g.edge(id).other(v);
            if (!seen[w]) {
                seen[w] = 1;
                parent_edge[w] = id;
                order.push_back(w);
            }
        }
    }
    if (static_cast<int>(order.size()) != n)
        throw std::invalid_argument("orient_mod2_connected: free edges do not span a connected graph");

    std::vector<char> tree(g.id_bound(), 0);
    for (Vertex v = 0; v < n; ++v)
        if (parent_edge[v] >= 0)
            tree[parent_edge[v]] = 1;
    for (const auto& e : g.edges())
        if (!o.is_set(e.id) && !tree[e.id]) {
            o.set(e.id, Dir::forward);
            ++out[e.u];
        }
    // Leaves first: each tree edge fixes the parity of its lower endpoint.
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        Vertex v = *it;
        if (parent_edge[v] < 0)
            continue;
        Vertex up = g.edge(parent_edge[v]).other(v);
        Vertex tail = (out[v] & 1) != (parity[v] & 1) ? v : up;
        o.direct(g, parent_edge[v], tail);
        ++out[tail];
    }
    if ((out[0] & 1) != (parity[0] & 1))
        throw std::invalid_argument("orient_mod2_connected: parity total does not match |E|");
    return o;
}

Orientation orient_mod2_bounded(const MultiGraph& g, const ResidueMap& p, std::optional<Vertex> z0,
                                std::optional<int> z0_target)
{
    int n = g.vertex_count();
    if (p.k != 2)
        throw std::invalid_argument("orient_mod2_bounded: residue map must be mod 2");
    if (p.size() != n)
        throw std::invalid_argument("orient_mod2_bounded: residue map size differs from vertex count");
    if (!p.matches_edge_count(g))
        throw std::invalid_argument("orient_mod2_bounded: sum of p is not congruent to |E|");
    if (z0_target && !z0)
        throw std::invalid_argument("orient_mod2_bounded: target given without z0");
    if (z0 && (*z0 < 0 || *z0 >= n))
        throw std::invalid_argument("orient_mod2_bounded: z0 out of range");
    const BoundSpec bounds = BoundSpec::floor_ceil_offset(1);
    if (z0_target) {
        auto [lo, hi] = bounds.raw_window(g, p, *z0);
        if (*z0_target < lo || *z0_target > hi || residue(*z0_target, 2) != p[*z0])
            throw std::invalid_argument("orient_mod2_bounded: infeasible pin " + std::to_string(*z0_target) +
                                        " at vertex " + std::to_string(*z0));
    }
    if (n <= 1)
        return Orientation(g);
    if (!is_lambda_edge_connected(g, 2))
        throw std::invalid_argument("orient_mod2_bounded: graph is not 2-edge-connected");

    LiftLedger ledger(g);
    for (;;) {
        const auto& h = ledger.derived();
        Vertex u = -1;
        for (Vertex v = 0; v < n && u < 0; ++v)
            if (h.degree(v) >= 4)
                u = v;
        if (u < 0)
            break;
        auto [a, b] = find_admissible_lift(h, u, LiftMode::lambda(2));
        ledger.lift(u, a, b);
    }
    const auto& h = ledger.derived();
    std::vector<int> ph(n);
    for (Vertex v = 0; v < n; ++v)
        ph[v] = residue(p[v] - (g.degree(v) - h.degree(v)) / 2, 2);
    Vertex z = z0.value_or(0);
    std::optional<int> target;
    if (z0_target)
        target = *z0_target - (g.degree(z) - h.degree(z)) / 2;

    // Base case, max degree 3: E at z with H - E connected, |E| = 1 or 2.
    int dz = h.degree(z);
    int want = dz % 2 ? 2 : 1;
    const auto& inc = h.incident(z);
    std::vector<EdgeId> chosen;
    for (std::size_t i = 0; i < inc.size() && chosen.empty(); ++i) {
        if (want == 1) {
            if (is_connected_without(h, {inc[i]}))
                chosen = {inc[i]};
            continue;
        }
        for (std::size_t j = i + 1; j < inc.size() && chosen.empty(); ++j)
            if (is_connected_without(h, {inc[i], inc[j]}))
                chosen = {inc[i], inc[j]};
    }
    if (chosen.empty())
        throw ContractViolation("orient_mod2_bounded: no removable edge set at z0");
    bool away = !target || *target >= (dz + 1) / 2;
    Orientation fixed(h);
    for (auto e : chosen)
        fixed.direct(h, e, away ? z : h.edge(e).other(z));
    Orientation oh = orient_mod2_connected(h, ph, fixed);
    Orientation og = induce_orientation(ledger, oh);

    BoundSpec check = z0_target ? bounds.pinned(*z0, *z0_target) : bounds;
    auto rep = verify_orientation(g, og, p, check);
    if (!rep.ok)
        throw ContractViolation("orient_mod2_bounded: output fails verification: " + rep.violations.front());
    return og;
}

const char* regime_name(Regime r)
{
    switch (r) {
    case Regime::edge_3k3:
        return "edge_3k3";
    case Regime::tree_2k2:
        return "tree_2k2";
    case Regime::odd_edge:
        return "odd_edge";
    }
    return "?";
}

BoundSpec regime_bounds(Regime r) { return r == Regime::tree_2k2 ? BoundSpec::tree_bound() : BoundSpec::alpha_bound(); }

std::pair<int, int> pin_interval(const MultiGraph& g, const ResidueMap& p, Regime r, Vertex v)
{
    if (r == Regime::tree_2k2)
        return BoundSpec::tree_bound().raw_window(g, p, v);
    return BoundSpec::floor_ceil_offset(p.k - 1).raw_window(g, p, v);
}

namespace {

// Every nonempty proper A with a nonzero alpha (or every A when all_sets is
// set) has d(A) >= 2k - 2 + 2|alpha(A)|.
bool alpha_cut_condition(const MultiGraph& g, const ResidueMap& p, bool all_sets)
{
    int n = g.vertex_count();
    if (n > kExhaustiveGuard)
        return false;
    std::uint64_t full = (1ULL << n) - 1;
    // Complements share |alpha| and d, so fixing vertex n-1 outside A suffices.
    for (std::uint64_t m = 1; m < (full >> 1) + 1; ++m) {
        VertexSet a(m);
        int at = alpha_of_set(g, p, a).abs_twice();
        if (!all_sets && at == 0)
            continue;
        if (boundary_degree(g, a) < 2 * p.k - 2 + at)
            return false;
    }
    return true;
}

struct SubFail {};

struct Inst {
    MultiGraph g;
    ResidueMap p;
    std::vector<char> free;  // residue-only vertices created by contraction
    std::optional<Vertex> pin;
    int pin_value = 0;
};

struct Ctx {
    Regime regime;
    const HybridOptions& opt;
    HybridStats& stats;
};

BoundSpec inst_bounds(const Inst& in, Regime r)
{
    int n = in.g.vertex_count();
    std::vector<int> lo(n), hi(n);
    BoundSpec base = regime_bounds(r);
    for (Vertex v = 0; v < n; ++v) {
        if (in.free[v]) {
            lo[v] = 0;
            hi[v] = in.g.degree(v);
        } else {
            std::tie(lo[v], hi[v]) = base.raw_window(in.g, in.p, v);
        }
    }
    auto b = BoundSpec::interval(lo, hi);
    return in.pin ? b.pinned(*in.pin, in.pin_value) : b;
}

Orientation run_search(const Inst& in, Ctx& ctx, const std::optional<Orientation>& fixed = std::nullopt)
{
    SearchOptions so;
    so.node_budget = ctx.opt.node_budget;
    so.stop = ctx.opt.stop;
    so.fixed = fixed;
    auto r = orient_mod_k_search(in.g, in.p, inst_bounds(in, ctx.regime), so);
    ++ctx.stats.searches;
    ctx.stats.nodes += r.nodes;
    if (r.outcome == SearchOutcome::budget_exhausted)
        throw BudgetExhausted("orient_mod_k_bounded: search budget exhausted");
    if (r.outcome == SearchOutcome::infeasible)
        throw SubFail{};
    return r.orientation;
}

Orientation solve(const Inst& in, Ctx& ctx);

// Lift at every vertex of degree >= 3k-1 keeping (3k-3)-edge-connectivity.
// alpha and d+ - d/2 are unchanged at each vertex, so bounds carry over.
std::optional<Orientation> reduce_by_lifts(const Inst& in, Ctx& ctx)
{
    int n = in.g.vertex_count(), k = in.p.k;
    auto heavy = [&](const MultiGraph& h) {
        for (Vertex v = 0; v < n; ++v)
            if (!in.free[v] && h.degree(v) >= 3 * k - 1)
                return v;
        return -1;
    };
    if (heavy(in.g) < 0)
        return std::nullopt;
    LiftLedger ledger(in.g);
    for (Vertex u; (u = heavy(ledger.derived())) >= 0;) {
        auto [a, b] = find_admissible_lift(ledger.derived(), u, LiftMode::lambda(3 * k - 3));
        ledger.lift(u, a, b);
        ++ctx.stats.lifts;
    }
    Inst h{ledger.derived(), in.p, in.free, in.pin, in.pin_value};
    std::vector<int> ph(n);
    for (Vertex v = 0; v < n; ++v)
        ph[v] = in.p[v] - (in.g.degree(v) - h.g.degree(v)) / 2;
    h.p = ResidueMap(k, ph);
    if (in.pin)
        h.pin_value -= (in.g.degree(*in.pin) - h.g.degree(*in.pin)) / 2;
    return induce_orientation(ledger, solve(h, ctx));
}

// Tree regime: split off a vertex of degree <= 3k-3 and fix its unlifted
// edges so that d+(u) lands in its window and residue.
std::optional<Orientation> reduce_by_split(const Inst& in, Ctx& ctx)
{
    int n = in.g.vertex_count(), k = in.p.k, m = 2 * k - 2;
    Vertex u = -1;
    for (Vertex v = 0; v < n && u < 0; ++v)
        if (!in.free[v] && (!in.pin || *in.pin != v) && in.g.degree(v) <= 3 * k - 3)
            u = v;
    if (u < 0)
        return std::nullopt;
    auto split = split_off_tree_connected(in.g, u, m);
    ++ctx.stats.splits;
    int q = static_cast<int>(split.unlifted.size()), t = split.lifts, lo = ceil_div(k - 2, 2);
    int t1 = -1;
    for (int c = 0; c <= q; ++c) {
        if (residue(c + t, k) != in.p[u] || c + t < lo || q - c + t < lo)
            continue;
        if (t1 < 0 || std::abs(2 * c - q) < std::abs(2 * t1 - q))
            t1 = c;
    }
    if (t1 < 0)
        throw SubFail{};

    std::vector<EdgeId> qs = split.unlifted;
    std::sort(qs.begin(), qs.end());
    Orientation extra(in.g);
    for (int i = 0; i < q; ++i)
        extra.direct(in.g, qs[i], i < t1 ? u : in.g.edge(qs[i]).other(u));
    // Contributions outside H: the unlifted edges plus closed trails at u.
    std::vector<int> contrib(n, 0);
    for (auto id : qs)
        ++contrib[extra.tail(in.g, id)];
    for (const auto& tr : split.ledger.closed_trails()) {
        Vertex cur = tr.from;
        for (auto id : tr.edges) {
            ++contrib[cur];
            cur = in.g.edge(id).other(cur);
        }
    }

    Inst h;
    h.g = split.graph;
    int hn = h.g.vertex_count();
    std::vector<int> ph(hn);
    h.free.assign(hn, 0);
    for (Vertex v = 0; v < n; ++v) {
        Vertex w = split.vertex_map[v];
        if (w < 0)
            continue;
        ph[w] = in.p[v] - contrib[v];
        h.free[w] = in.free[v];
    }
    h.p = ResidueMap(k, ph);
    if (in.pin) {
        h.pin = split.vertex_map[*in.pin];
        h.pin_value = in.pin_value - contrib[*in.pin];
    }
    Orientation oh = solve(h, ctx);
    Orientation od(split.ledger.derived());
    pull_back(split.ledger.derived(), split.vertex_map, h.g, oh, od);
    Orientation og = induce_orientation(split.ledger, od);
    for (auto id : qs)
        og.set(id, extra.get(id));
    return og;
}

// Minimal tight A avoiding the root: solve G/A, then G/A^c with the cut fixed.
std::optional<Orientation> reduce_by_contraction(const Inst& in, Ctx& ctx)
{
    int n = in.g.vertex_count(), k = in.p.k;
    if (n < 4 || n > kExhaustiveGuard)
        return std::nullopt;
    Vertex root = in.pin.value_or(n - 1);
    std::uint64_t best = 0;
    int best_size = n + 1;
    for (std::uint64_t m = 1; m < (1ULL << n); ++m) {
        if ((m >> root) & 1ULL)
            continue;
        int s = std::popcount(m);
        if (s < 2 || s > n - 2 || s >= best_size)
            continue;
        VertexSet a(m);
        if (boundary_degree(in.g, a) < 2 * k + alpha_of_set(in.g, in.p, a).abs_twice()) {
            best = m;
            best_size = s;
        }
    }
    if (!best)
        return std::nullopt;
    ++ctx.stats.contractions;
    VertexSet a(best), ac = a.complement(n);

    auto c1 = contract(in.g, a);
    Inst h1;
    h1.g = c1.graph;
    int n1 = h1.g.vertex_count();
    std::vector<int> p1(n1, 0);
    h1.free.assign(n1, 0);
    for (Vertex v = 0; v < n; ++v)
        if (!a.contains(v)) {
            p1[c1.vertex_map[v]] = in.p[v];
            h1.free[c1.vertex_map[v]] = in.free[v];
        }
    p1[c1.merged] = residue(residue_sum(in.g, in.p, a), k);
    h1.free[c1.merged] = 1;
    h1.p = ResidueMap(k, p1);
    if (in.pin) {
        h1.pin = c1.vertex_map[*in.pin];
        h1.pin_value = in.pin_value;
    }
    Orientation og(in.g);
    pull_back(in.g, c1.vertex_map, h1.g, solve(h1, ctx), og);

    auto c2 = contract(in.g, ac);
    Inst h2;
    h2.g = c2.graph;
    int n2 = h2.g.vertex_count();
    std::vector<int> p2(n2, 0);
    h2.free.assign(n2, 0);
    for (Vertex v = 0; v < n; ++v)
        if (a.contains(v)) {
            p2[c2.vertex_map[v]] = in.p[v];
            h2.free[c2.vertex_map[v]] = in.free[v];
        }
    p2[c2.merged] = residue(residue_sum(in.g, in.p, ac), k);
    h2.free[c2.merged] = 1;
    h2.p = ResidueMap(k, p2);
    Orientation fixed(h2.g);
    for (auto id : boundary_edges(in.g, a))
        fixed.direct(h2.g, id, c2.vertex_map[og.tail(in.g, id)]);
    pull_back(in.g, c2.vertex_map, h2.g, run_search(h2, ctx, fixed), og);
    return og;
}

Orientation solve(const Inst& in, Ctx& ctx)
{
    if (ctx.opt.stop.stop_requested())
        throw BudgetExhausted("orient_mod_k_bounded: stop requested");
    if (in.g.vertex_count() <= 2)
        return run_search(in, ctx);
    if (ctx.regime == Regime::edge_3k3)
        if (auto o = reduce_by_lifts(in, ctx))
            return *o;
    if (ctx.regime == Regime::tree_2k2)
        if (auto o = reduce_by_split(in, ctx))
            return *o;
    if (auto o = reduce_by_contraction(in, ctx))
        return *o;
    return run_search(in, ctx);
}

}  // namespace

bool regime_precondition(const MultiGraph& g, const ResidueMap& p, Regime r)
{
    int k = p.k;
    if (g.vertex_count() <= 1)
        return true;
    switch (r) {
    case Regime::edge_3k3:
        return is_lambda_edge_connected(g, 3 * k - 3) || alpha_cut_condition(g, p, true);
    case Regime::tree_2k2:
        return is_tree_connected(g, 2 * k - 2);
    case Regime::odd_edge:
        return alpha_cut_condition(g, p, false);
    }
    return false;
}

HybridResult orient_mod_k_bounded(const MultiGraph& g, const ResidueMap& p, Regime regime, std::optional<Vertex> z0,
                                  std::optional<int> z0_target, const HybridOptions& options)
{
    int n = g.vertex_count(), k = p.k;
    if (p.size() != n)
        throw std::invalid_argument("orient_mod_k_bounded: residue map size differs from vertex count");
    if (!p.matches_edge_count(g))
        throw std::invalid_argument("orient_mod_k_bounded: sum of p is not congruent to |E|");
    if (z0_target && !z0)
        throw std::invalid_argument("orient_mod_k_bounded: target given without z0");
    if (z0 && (*z0 < 0 || *z0 >= n))
        throw std::invalid_argument("orient_mod_k_bounded: z0 out of range");
    if (z0_target) {
        auto [lo, hi] = pin_interval(g, p, regime, *z0);
        if (*z0_target < lo || *z0_target > hi || residue(*z0_target, k) != p[*z0])
            throw std::invalid_argument("orient_mod_k_bounded: infeasible pin " + std::to_string(*z0_target) +
                                        " at vertex " + std::to_string(*z0));
    }
    if (options.check_precondition && !regime_precondition(g, p, regime))
        throw std::invalid_argument(std::string("orient_mod_k_bounded: precondition of regime ") +
                                    regime_name(regime) + " fails");

    HybridResult res;
    BoundSpec bounds = regime_bounds(regime);
    if (z0_target)
        bounds = bounds.pinned(*z0, *z0_target);

    if (k == 1) {
        bool ceil_pin = z0_target && *z0_target * 2 > g.degree(*z0);
        res.orientation = balanced_orientation(g, z0, ceil_pin);
    } else if (k == 2 && regime != Regime::tree_2k2 && n >= 2 && is_lambda_edge_connected(g, 2)) {
        res.orientation = orient_mod2_bounded(g, p, z0, z0_target);
    } else {
        Inst in{g, p, std::vector<char>(n, 0), z0_target ? z0 : std::nullopt, z0_target.value_or(0)};
        Ctx ctx{regime, options, res.stats};
        try {
            res.orientation = solve(in, ctx);
        } catch (const SubFail&) {
            ++res.stats.fallbacks;
        } catch (const ContractViolation&) {
            ++res.stats.fallbacks;
        }
        if (res.stats.fallbacks) {
            try {
                res.orientation = run_search(in, ctx);
            } catch (const SubFail&) {
                throw ContractViolation("orient_mod_k_bounded: no orientation exists under the regime bounds");
            }
        }
    }
    auto rep = verify_orientation(g, res.orientation, p, bounds);
    if (!rep.ok)
        throw ContractViolation("orient_mod_k_bounded: output fails verification: " + rep.violations.front());
    return res;
}

}  // namespace modk
