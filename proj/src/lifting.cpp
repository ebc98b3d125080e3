#include "modk/lifting.hpp"

#include "modk/connectivity.hpp"
#include "modk/tree_packing.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

namespace modk {

LiftLedger::LiftLedger(MultiGraph base) : base_(std::move(base)), derived_(base_)
{
    trails_.resize(base_.id_bound());
    for (const auto& e : base_.edges())
        trails_[e.id] = Trail{e.u, e.v, {e.id}};
}

const Trail& LiftLedger::trail(EdgeId derived_edge) const
{
    if (! derived_.has_edge(derived_edge) || derived_edge >= static_cast<EdgeId>(trails_.size())
        || ! trails_[derived_edge])
        throw std::invalid_argument("ledger has no trail for edge " + std::to_string(derived_edge));
    return *trails_[derived_edge];
}

namespace {
    Trail ending_at(Trail t, Vertex v)
    {
        if (t.to != v) {
            std::reverse(t.edges.begin(), t.edges.end());
            std::swap(t.from, t.to);
        }
        return t;
    }
}

std::optional<EdgeId> LiftLedger::lift(Vertex pivot, EdgeId a, EdgeId b, std::optional<EdgeId> forced_id)
{
    if (a == b)
        throw std::invalid_argument("lift: the two edges must differ");
    const Edge ea = derived_.edge(a), eb = derived_.edge(b);
    if (! ea.touches(pivot) || ! eb.touches(pivot))
        throw std::invalid_argument("lift: edges do not share the pivot");
    Vertex x = ea.other(pivot), y = eb.other(pivot);
    Trail ta = ending_at(trail(a), pivot);
    Trail tb = ending_at(trail(b), pivot);
    std::reverse(tb.edges.begin(), tb.edges.end());
    std::swap(tb.from, tb.to);

    Trail joined{x, y, ta.edges};
    joined.edges.insert(joined.edges.end(), tb.edges.begin(), tb.edges.end());

    derived_.remove_edge(a);
    derived_.remove_edge(b);
    trails_[a].reset();
    trails_[b].reset();
    LiftStep step{pivot, ea, eb, std::nullopt};
    std::optional<EdgeId> created;
    if (x != y) {
        EdgeId id = forced_id ? *forced_id : std::max(derived_.id_bound(), static_cast<EdgeId>(trails_.size()));
        derived_.add_edge_with_id(id, x, y);
        if (id >= static_cast<EdgeId>(trails_.size()))
            trails_.resize(id + 1);
        trails_[id] = std::move(joined);
        created = id;
        step.created = derived_.edge(id);
    }
    else
        closed_.push_back(std::move(joined));
    steps_.push_back(step);
    return created;
}

void LiftLedger::drop(EdgeId derived_edge)
{
    const auto& t = trail(derived_edge);
    dropped_.insert(dropped_.end(), t.edges.begin(), t.edges.end());
    derived_.remove_edge(derived_edge);
    trails_[derived_edge].reset();
}

MultiGraph LiftLedger::replay() const
{
    MultiGraph g = base_;
    for (const auto& s : steps_) {
        g.remove_edge(s.first.id);
        g.remove_edge(s.second.id);
        if (s.created)
            g.add_edge_with_id(s.created->id, s.created->u, s.created->v);
    }
    for (auto e : dropped_)
        if (g.has_edge(e))
            g.remove_edge(e);
    return g;
}

LiftLedger LiftLedger::restricted(const std::vector<EdgeId>& derived_edges, bool keep_closed) const
{
    // Owner of every edge that ever existed: the final derived edge it feeds,
    // or -(closed index + 1) for annihilated ones.
    std::map<EdgeId, long> owner;
    for (auto e : derived_.edge_ids())
        owner[e] = e;
    int closed_index = static_cast<int>(closed_.size());
    for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
        long o = it->created ? owner.at(it->created->id) : -(--closed_index) - 1;
        owner[it->first.id] = o;
        owner[it->second.id] = o;
    }
    std::vector<char> keep_edge(derived_.id_bound(), 0);
    for (auto e : derived_edges) {
        if (! derived_.has_edge(e))
            throw std::invalid_argument("restricted: edge not in derived graph");
        keep_edge[e] = 1;
    }
    auto kept = [&](long o) { return o >= 0 ? static_cast<bool>(keep_edge[o]) : keep_closed; };

    std::vector<EdgeId> base_ids;
    for (auto e : base_.edge_ids()) {
        auto it = owner.find(e);
        if (it != owner.end() && kept(it->second))
            base_ids.push_back(e);
    }
    LiftLedger out(edge_subgraph(base_, base_ids));
    for (const auto& s : steps_) {
        if (! kept(owner.at(s.first.id)))
            continue;
        out.lift(s.pivot, s.first.id, s.second.id, s.created ? std::optional<EdgeId>(s.created->id) : std::nullopt);
    }
    return out;
}

MultiGraph lift_pair(LiftLedger& ledger, EdgeId xu, EdgeId uy, std::optional<Vertex> pivot)
{
    const auto& g = ledger.derived();
    const Edge a = g.edge(xu), b = g.edge(uy);
    Vertex u = -1;
    if (pivot)
        u = *pivot;
    else {
        bool parallel = (a.u == b.u && a.v == b.v) || (a.u == b.v && a.v == b.u);
        if (parallel)
            throw std::invalid_argument("lift_pair: parallel pair needs an explicit pivot");
        for (auto c : {a.u, a.v})
            if (b.touches(c))
                u = c;
        if (u < 0)
            throw std::invalid_argument("lift_pair: edges share no endpoint");
    }
    ledger.lift(u, xu, uy);
    return ledger.derived();
}

MultiGraph lifted_copy(const MultiGraph& g, Vertex u, EdgeId a, EdgeId b)
{
    MultiGraph h = g;
    const Edge ea = g.edge(a), eb = g.edge(b);
    if (a == b || ! ea.touches(u) || ! eb.touches(u))
        throw std::invalid_argument("lifted_copy: bad pair");
    h.remove_edge(a);
    h.remove_edge(b);
    Vertex x = ea.other(u), y = eb.other(u);
    if (x != y)
        h.add_edge(x, y);
    return h;
}

namespace {
    template <typename Pred>
    std::optional<std::pair<EdgeId, EdgeId>> search_pair(const MultiGraph& g, Vertex u, std::optional<EdgeId> fixed,
                                                         const std::vector<std::pair<EdgeId, EdgeId>>* allowed,
                                                         Pred pred, bool parallel_fallback = false)
    {
        const auto& inc = g.incident(u);
        bool many = g.neighbors(u).size() >= 2;
        std::vector<EdgeId> firsts;
        if (fixed) {
            if (std::find(inc.begin(), inc.end(), *fixed) == inc.end())
                throw std::invalid_argument("fixed edge is not incident to the pivot");
            firsts.push_back(*fixed);
        }
        else
            firsts = inc;
        auto permitted = [&](EdgeId a, EdgeId b) {
            if (! allowed)
                return true;
            for (auto [p, q] : *allowed)
                if ((p == a && q == b) || (p == b && q == a))
                    return true;
            return false;
        };
        for (int pass = 0; pass < (many && parallel_fallback ? 2 : 1); ++pass)
            for (auto a : firsts)
                for (auto b : inc) {
                    if (b == a || ! permitted(a, b))
                        continue;
                    bool parallel = g.edge(a).other(u) == g.edge(b).other(u);
                    if (many && parallel != (pass == 1))
                        continue;
                    if (pred(lifted_copy(g, u, a, b)))
                        return std::make_pair(a, b);
                }
        return std::nullopt;
    }
}

std::pair<EdgeId, EdgeId> find_admissible_lift(const MultiGraph& g, Vertex u, LiftMode mode,
                                               std::optional<EdgeId> fixed,
                                               const std::vector<std::pair<EdgeId, EdgeId>>* allowed)
{
    const int d = g.degree(u);
    std::function<bool(const MultiGraph&)> pred;
    switch (mode.kind) {
    case LiftMode::Kind::preserve_lambda:
        if (mode.a < 2 || d < mode.a + 2)
            throw std::invalid_argument("find_admissible_lift: need lambda >= 2 and d(u) >= lambda + 2");
        pred = [&](const MultiGraph& h) { return is_lambda_edge_connected(h, mode.a); };
        break;
    case LiftMode::Kind::preserve_parity:
        if (d % 2 && d < 2 * mode.b + 2)
            throw std::invalid_argument("find_admissible_lift: need d(u) even or d(u) >= 2m'+2");
        if (! is_parity_edge_connected(g, mode.a, mode.b, ParityMode::cut_parity, u).holds())
            throw std::invalid_argument("find_admissible_lift: parity condition fails before lifting");
        pred = [&](const MultiGraph& h) {
            return is_parity_edge_connected(h, mode.a, mode.b, ParityMode::cut_parity, u).holds();
        };
        break;
    case LiftMode::Kind::preserve_size_parity:
        for (Vertex v = 0; v < g.vertex_count(); ++v)
            if (g.degree(v) % 2)
                throw std::invalid_argument("find_admissible_lift: size parity mode needs even degrees");
        if (d < 2 * mode.b + 2)
            throw std::invalid_argument("find_admissible_lift: need d(u) >= 2n'+2");
        if (! is_parity_edge_connected(g, mode.a, mode.b, ParityMode::set_cardinality, u).holds())
            throw std::invalid_argument("find_admissible_lift: size condition fails before lifting");
        pred = [&](const MultiGraph& h) {
            return is_parity_edge_connected(h, mode.a, mode.b, ParityMode::set_cardinality, u).holds();
        };
        break;
    }
    if (auto p = search_pair(g, u, fixed, allowed, pred, mode.kind == LiftMode::Kind::preserve_lambda))
        return *p;
    throw ContractViolation("find_admissible_lift: no admissible pair at vertex " + std::to_string(u));
}

namespace {
    SplitOff finish_split(LiftLedger ledger, Vertex u, int lifts)
    {
        SplitOff out;
        std::vector<EdgeId> rest = ledger.derived().incident(u);
        for (auto e : rest)
            ledger.drop(e);
        out.unlifted = ledger.dropped();
        auto sub = remove_vertex(ledger.derived(), u);
        out.graph = std::move(sub.graph);
        out.vertex_map = std::move(sub.vertex_map);
        out.ledger = std::move(ledger);
        out.lifts = lifts;
        return out;
    }
}

SplitOff split_off_vertex(const MultiGraph& g, Vertex u, LiftMode mode)
{
    if (g.degree(u) % 2)
        throw std::invalid_argument("split_off_vertex: odd degree at the pivot");
    std::function<bool(const MultiGraph&)> pred;
    switch (mode.kind) {
    case LiftMode::Kind::preserve_lambda:
        pred = [&](const MultiGraph& h) {
            auto r = restricted_edge_connectivity(h, u);
            return ! r || *r >= mode.a;
        };
        break;
    case LiftMode::Kind::preserve_parity:
        pred = [&](const MultiGraph& h) {
            return is_parity_edge_connected(h, mode.a, mode.b, ParityMode::cut_parity, u).holds();
        };
        break;
    case LiftMode::Kind::preserve_size_parity:
        pred = [&](const MultiGraph& h) {
            return is_parity_edge_connected(h, mode.a, mode.b, ParityMode::set_cardinality, u).holds();
        };
        break;
    }
    if (! pred(g))
        throw std::invalid_argument("split_off_vertex: connectivity precondition fails");
    LiftLedger ledger(g);
    int lifts = 0;
    while (ledger.derived().degree(u) > 0) {
        auto p = search_pair(ledger.derived(), u, std::nullopt, nullptr, pred,
                             mode.kind == LiftMode::Kind::preserve_lambda);
        if (! p)
            throw ContractViolation("split_off_vertex: no admissible pair at vertex " + std::to_string(u));
        ledger.lift(u, p->first, p->second);
        ++lifts;
    }
    return finish_split(std::move(ledger), u, lifts);
}

SplitOff split_off_tree_connected(const MultiGraph& g, Vertex u, int m)
{
    if (m < 1)
        throw std::invalid_argument("split_off_tree_connected: m must be positive");
    if (g.degree(u) > 2 * m)
        throw std::invalid_argument("split_off_tree_connected: d(u) exceeds 2m");
    auto packed = spanning_tree_packing(g, m);
    if (! packed.packing)
        throw std::invalid_argument("split_off_tree_connected: graph is not m-tree-connected");
    const auto& trees = packed.packing->trees;
    const int n = g.vertex_count();

    // Edges at u per tree; trees touching u once donate their edge.
    std::vector<std::vector<EdgeId>> at_u(trees.size());
    std::vector<EdgeId> spare;
    for (std::size_t i = 0; i < trees.size(); ++i) {
        for (auto e : trees[i])
            if (g.edge(e).touches(u))
                at_u[i].push_back(e);
        if (at_u[i].size() == 1)
            spare.push_back(at_u[i][0]);
    }
    std::reverse(spare.begin(), spare.end());

    LiftLedger ledger(g);
    int lifts = 0;
    for (std::size_t i = 0; i < trees.size(); ++i) {
        const int omega = static_cast<int>(at_u[i].size());
        if (omega < 2)
            continue;
        // Components of T_i - u.
        std::vector<int> comp(n);
        std::iota(comp.begin(), comp.end(), 0);
        std::function<int(int)> find = [&](int x) { return comp[x] == x ? x : comp[x] = find(comp[x]); };
        for (auto e : trees[i]) {
            const auto& ed = g.edge(e);
            if (! ed.touches(u))
                comp[find(ed.u)] = find(ed.v);
        }
        // Edges at u grouped by the component of their far end.
        std::map<int, std::vector<EdgeId>> bucket;
        for (auto e : at_u[i])
            bucket[find(g.edge(e).other(u))].push_back(e);
        for (int j = 0; j < omega - 2; ++j) {
            if (spare.empty())
                throw ContractViolation("split_off_tree_connected: ran out of donor edges");
            auto e = spare.back();
            spare.pop_back();
            bucket[find(g.edge(e).other(u))].push_back(e);
        }
        while (bucket.size() >= 2) {
            auto crowded = bucket.end();
            for (auto it = bucket.begin(); it != bucket.end(); ++it)
                if (it->second.size() >= 2 || bucket.size() == 2) {
                    crowded = it;
                    break;
                }
            if (crowded == bucket.end())
                throw ContractViolation("split_off_tree_connected: component count invariant broken");
            auto other = crowded == bucket.begin() ? std::next(bucket.begin()) : bucket.begin();
            EdgeId a = crowded->second.back(), b = other->second.back();
            crowded->second.pop_back();
            other->second.pop_back();
            auto created = ledger.lift(u, a, b);
            if (! created)
                throw ContractViolation("split_off_tree_connected: lifted a parallel pair");
            ++lifts;
            auto& merged = crowded->second;
            merged.insert(merged.end(), other->second.begin(), other->second.end());
            bucket.erase(other);
            if (bucket.size() == 1 && ! bucket.begin()->second.empty())
                throw ContractViolation("split_off_tree_connected: leftover edges in a tree");
        }
    }
    auto out = finish_split(std::move(ledger), u, lifts);
    if (lifts > g.degree(u) - m)
        throw ContractViolation("split_off_tree_connected: lift budget exceeded");
    if (out.graph.vertex_count() >= 2 && ! is_tree_connected(out.graph, m))
        throw ContractViolation("split_off_tree_connected: result lost tree-connectivity");
    return out;
}

Orientation induce_orientation(const LiftLedger& ledger, const Orientation& derived)
{
    const auto& base = ledger.base();
    const auto& der = ledger.derived();
    Orientation out(base);
    auto walk = [&](const Trail& t, Vertex start) {
        Vertex cur = start;
        std::vector<EdgeId> seq = t.edges;
        if (start != t.from)
            std::reverse(seq.begin(), seq.end());
        for (auto e : seq) {
            out.direct(base, e, cur);
            cur = base.edge(e).other(cur);
        }
    };
    for (const auto& e : der.edges()) {
        auto tail = derived.tail(der, e.id);
        if (tail < 0)
            throw std::invalid_argument("induce_orientation: derived orientation is partial");
        walk(ledger.trail(e.id), tail);
    }
    for (const auto& t : ledger.closed_trails())
        walk(t, t.from);

    if (ledger.dropped().empty()) {
        auto ob = out.out_degrees(base), od = derived.out_degrees(der);
        for (Vertex v = 0; v < base.vertex_count(); ++v) {
            int diff = base.degree(v) - der.degree(v);
            if (diff % 2 || ob[v] != od[v] + diff / 2)
                throw ContractViolation("induce_orientation: out-degree identity fails at " + std::to_string(v));
        }
    }
    return out;
}

}  // namespace modk
