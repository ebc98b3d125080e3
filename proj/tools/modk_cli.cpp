// Command-line front end. Exit codes: 0 pass, 1 failure found, 2 usage
// error, 3 budget exhausted.

#include "modk/connectivity.hpp"
#include "modk/decomposition.hpp"
#include "modk/factor.hpp"
#include "modk/generators.hpp"
#include "modk/graph_io.hpp"
#include "modk/lifting.hpp"
#include "modk/orientation.hpp"
#include "modk/probes.hpp"
#include "modk/suites.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

using namespace modk;
using nlohmann::json;

namespace {

constexpr int kPass = 0, kFailure = 1, kUsage = 2, kBudget = 3;

struct Globals {
    std::uint64_t seed = 1;
    std::optional<long long> budget;
    std::string format = "text";
    int k = 3;
    int mod = 3;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path)
{
    if (path == "-")
        return std::string(std::istreambuf_iterator<char>(std::cin), {});
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot read '" + path + "'");
    return std::string(std::istreambuf_iterator<char>(in), {});
}

MultiGraph load_graph(const std::string& path)
{
    if (path.empty())
        throw UsageError("--input is required");
    return parse_graph(slurp(path));
}

json graph_json(const MultiGraph& g)
{
    json edges = json::array();
    for (const auto& e : g.edges())
        edges.push_back({e.u, e.v});
    return {{"n", g.vertex_count()}, {"edges", edges}};
}

json orientation_json(const MultiGraph& g, const Orientation& d)
{
    std::string s;
    for (auto e : g.edge_ids())
        s += d.get(e) == Dir::forward ? '+' : '-';
    return {{"directions", s}, {"out_degrees", d.out_degrees(g)}};
}

// Residues from a comma list, or zero everywhere; the last vertex
// absorbs the |E| mod k correction when asked.
std::vector<int> residues(const MultiGraph& g, const std::vector<int>& given, int k, bool fix_sum)
{
    std::vector<int> p = given;
    if (p.empty())
        p.assign(g.vertex_count(), 0);
    if (static_cast<int>(p.size()) != g.vertex_count())
        throw UsageError("residue list needs one value per vertex");
    for (auto& x : p)
        x = residue(x, k);
    if (fix_sum && !p.empty()) {
        long long sum = 0;
        for (int x : p)
            sum += x;
        p.back() = residue(p.back() + g.edge_count() - sum, k);
    }
    return p;
}

Regime parse_regime(const std::string& s)
{
    if (s == "edge")
        return Regime::edge_3k3;
    if (s == "tree")
        return Regime::tree_2k2;
    if (s == "odd")
        return Regime::odd_edge;
    throw UsageError("unknown regime '" + s + "'");
}

void emit_edges(const Globals& G, const std::string& label, const std::vector<EdgeId>& es, json& out)
{
    if (G.format == "json")
        out[label] = es;
    else
        std::cout << label << '\n' << format_edge_set(es);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Modulo-k orientations, factors and decompositions of multigraphs"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals G;
    app.add_option("--seed", G.seed, "seed for every randomized path");
    app.add_option("--budget", G.budget,
                   "search node budget; solvers and suites default to 0 (unlimited), probes to 1000000 and "
                   "search nothing at 0")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--format", G.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--k", G.k, "probe k, star size or tree-connectivity")->check(CLI::PositiveNumber);
    app.add_option("--mod", G.mod, "modulus of residue maps")->check(CLI::PositiveNumber);

    // gen
    auto* gen = app.add_subcommand("gen", "generate graphs");
    Ensemble ens;
    std::string kind = "cycles", base_path;
    gen->add_option("--kind", kind, "cycles, circulant, cartesian or scaled");
    gen->add_option("--n", ens.n, "vertex count");
    gen->add_option("--count", ens.count, "graphs to emit");
    gen->add_option("--cycles", ens.cycles, "Hamiltonian cycles in the union");
    gen->add_option("--jumps", ens.jumps, "circulant connection set")->delimiter(',');
    gen->add_option("--cycle-length", ens.cycle_length, "cartesian cycle length");
    gen->add_option("--order", ens.complete_order, "cartesian complete-graph order");
    gen->add_option("--base", base_path, "base graph file for scaled");
    gen->add_option("--factor", ens.factor, "multiplicity for scaled");
    gen->add_option("--min-lambda", ens.min_lambda, "declared edge-connectivity, verified");

    // orient
    auto* orient = app.add_subcommand("orient", "find a p-orientation");
    std::string input, regime = "edge";
    std::vector<int> pvals;
    std::optional<int> z0, target;
    bool exact = false;
    orient->add_option("--input", input, "graph file, '-' for stdin");
    orient->add_option("--p", pvals, "residues per vertex (last one adjusted to |E|)")->delimiter(',');
    orient->add_option("--regime", regime, "edge, tree or odd");
    orient->add_option("--z0", z0, "pinned vertex");
    orient->add_option("--target", target, "out-degree at z0");
    orient->add_flag("--exact", exact, "exact search over the regime window instead of the reductions");

    // factor
    auto* factor = app.add_subcommand("factor", "find a factor");
    std::string fkind = "eulerian";
    std::vector<int> fvals;
    int fm = 1;
    bool smoke = false;
    factor->add_option("--input", input, "graph file");
    factor->add_option("--kind", fkind, "eulerian, mod2, bipartite, star or nonbipartite");
    factor->add_option("--f", fvals, "target residues per vertex")->delimiter(',');
    factor->add_option("--m", fm, "tree-connectivity of the mod 2 factor");
    factor->add_flag("--smoke", smoke, "non-bipartite pipeline without window checks");

    // decompose
    auto* decompose = app.add_subcommand("decompose", "split into factors");
    std::string dkind = "two-trees";
    int m1 = 1, m2 = 1;
    decompose->add_option("--input", input, "graph file");
    decompose->add_option("--kind", dkind, "two-trees, tree-trees or balanced");
    decompose->add_option("--m1", m1, "tree-connectivity of the first factor");
    decompose->add_option("--m2", m2, "tree-connectivity of the second factor");

    // lift
    auto* lift = app.add_subcommand("lift", "lift at a vertex");
    int vertex = 0, a = 2, b = 0;
    std::string mode = "lambda";
    bool split = false;
    lift->add_option("--input", input, "graph file");
    lift->add_option("--vertex", vertex, "pivot vertex")->required();
    lift->add_option("--mode", mode, "lambda, parity, size-parity or tree");
    lift->add_option("--a", a, "lambda, m or n (tree: m)");
    lift->add_option("--b", b, "m' or n'");
    lift->add_flag("--split", split, "split the vertex off completely");

    // verify
    auto* verify = app.add_subcommand("verify", "check an orientation or a connectivity claim");
    std::string orientation_path;
    int offset = 1;
    std::optional<int> lambda;
    verify->add_option("--input", input, "graph file");
    verify->add_option("--orientation", orientation_path, "orientation file");
    verify->add_option("--p", pvals, "residues per vertex")->delimiter(',');
    verify->add_option("--offset", offset, "floor/ceil window offset");
    verify->add_option("--lambda", lambda, "claimed edge-connectivity lower bound");

    // probe
    auto* probe = app.add_subcommand("probe", "search for counterexamples to an open statement");
    std::string probe_id;
    ProbeParams pp;
    probe->add_option("id", probe_id, "conj-2k-1, que-4k-2, que-odd-sets, conj-k-tree or conj-delta5")->required();
    probe->add_option("--n", pp.n, "vertex count");
    probe->add_option("--count", pp.count, "instances");
    probe->add_flag("--weaken", pp.weaken, "lower the premise by one");

    // suite
    auto* suite = app.add_subcommand("suite", "run a property suite");
    std::string suite_id;
    SuiteParams sp;
    bool timing = false;
    suite->add_option("id", suite_id, "suite id or 'all'")->required();
    suite->add_option("--count", sp.count, "instances (0: default)");
    suite->add_option("--threads", sp.threads, "worker threads (0: all cores)");
    suite->add_flag("--timing", timing, "append wall-clock time");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    json out = json::object();
    try {
        if (*gen) {
            ens.kind = parse_generator_kind(kind);
            ens.seed = G.seed;
            if (ens.kind == GeneratorKind::scaled)
                ens.base = load_graph(base_path);
            auto graphs = gen_graphs(ens);
            if (G.format == "json") {
                out["graphs"] = json::array();
                for (const auto& g : graphs)
                    out["graphs"].push_back(graph_json(g));
            } else {
                for (const auto& g : graphs)
                    std::cout << format_graph(g);
            }
        } else if (*orient) {
            auto g = load_graph(input);
            ResidueMap p(G.mod, residues(g, pvals, G.mod, true));
            Orientation d;
            if (G.mod == 2 && regime == "edge" && !exact) {
                d = orient_mod2_bounded(g, p, z0, target);
            } else if (exact) {
                auto bounds = regime_bounds(parse_regime(regime));
                if (z0)
                    bounds = bounds.pinned(*z0, target.value_or(0));
                SearchOptions o;
                o.node_budget = G.budget.value_or(0);
                auto r = orient_mod_k_search(g, p, bounds, o);
                if (r.outcome == SearchOutcome::budget_exhausted)
                    throw BudgetExhausted("search budget exhausted");
                if (r.outcome == SearchOutcome::infeasible) {
                    std::cout << "infeasible\n";
                    return kFailure;
                }
                d = r.orientation;
            } else {
                HybridOptions o;
                o.node_budget = G.budget.value_or(0);
                d = orient_mod_k_bounded(g, p, parse_regime(regime), z0, target, o).orientation;
            }
            if (G.format == "json")
                out = orientation_json(g, d);
            else
                std::cout << format_orientation(g, d);
        } else if (*factor) {
            auto g = load_graph(input);
            std::vector<EdgeId> edges;
            if (fkind == "eulerian") {
                edges = spanning_eulerian_subgraph(g).edges;
            } else if (fkind == "mod2") {
                auto f = residues(g, fvals, 2, false);
                edges = f_factor_mod2_bounded(g, f, fm, std::vector<int>(g.vertex_count(), 0)).edges;
            } else if (fkind == "bipartite") {
                HybridOptions o;
                o.node_budget = G.budget.value_or(0);
                edges = bipartite_f_factor(g, ResidueMap(G.mod, residues(g, fvals, G.mod, false)), Regime::edge_3k3,
                                           std::nullopt, std::nullopt, o)
                            .edges;
            } else if (fkind == "star") {
                auto sd = star_decomposition(g, G.k, G.budget.value_or(0));
                if (!sd.feasible) {
                    std::cout << "infeasible\n";
                    return kFailure;
                }
                for (const auto& s : sd.stars) {
                    if (G.format == "json") {
                        out["stars"].push_back({{"center", s.center}, {"edges", s.edges}});
                    } else {
                        std::cout << "star " << s.center << '\n' << format_edge_set(s.edges);
                    }
                }
                if (G.format == "json")
                    std::cout << out.dump(2) << '\n';
                return kPass;
            } else if (fkind == "nonbipartite") {
                NonBipartiteOptions o;
                o.smoke = smoke;
                o.node_budget = G.budget.value_or(0);
                edges = nonbipartite_f_factor(g, ResidueMap(G.mod, residues(g, fvals, G.mod, false)), o).edges;
            } else {
                throw UsageError("unknown factor kind '" + fkind + "'");
            }
            emit_edges(G, "factor", edges, out);
        } else if (*decompose) {
            auto g = load_graph(input);
            const int n = g.vertex_count();
            if (n < 2)
                throw UsageError("decompose needs at least two vertices");
            std::vector<int> r1(n, 0), r2(n, 0);
            r1[0] = m1;
            r2[1] = m2;
            if (dkind == "two-trees") {
                auto r = two_tree_connected_factors(g, m1, m2, r1, r2);
                emit_edges(G, "g1", r.parts[0], out);
                emit_edges(G, "g2", r.parts[1], out);
            } else if (dkind == "tree-trees") {
                auto r = tree_plus_trees_decomposition(g, m1, m2, r1, r2);
                emit_edges(G, "g1", r.g1, out);
                emit_edges(G, "g2", r.g2, out);
            } else if (dkind == "balanced") {
                auto r = balanced_split(g);
                emit_edges(G, "g1", r.g1, out);
                emit_edges(G, "g2", r.g2, out);
            } else {
                throw UsageError("unknown decomposition kind '" + dkind + "'");
            }
        } else if (*lift) {
            auto g = load_graph(input);
            LiftMode lm;
            if (mode == "lambda")
                lm = LiftMode::lambda(a);
            else if (mode == "parity")
                lm = LiftMode::parity(a, b);
            else if (mode == "size-parity")
                lm = LiftMode::size_parity(a, b);
            else if (mode != "tree")
                throw UsageError("unknown lift mode '" + mode + "'");
            MultiGraph h;
            int lifts = 1;
            if (mode == "tree" || split) {
                auto s = mode == "tree" ? split_off_tree_connected(g, vertex, a) : split_off_vertex(g, vertex, lm);
                h = s.graph;
                lifts = s.lifts;
            } else {
                auto [x, y] = find_admissible_lift(g, vertex, lm);
                h = lifted_copy(g, vertex, x, y);
            }
            if (G.format == "json") {
                out = graph_json(h);
                out["lifts"] = lifts;
            } else {
                std::cout << "# lifts " << lifts << '\n' << format_graph(h);
            }
        } else if (*verify) {
            auto g = load_graph(input);
            bool ok = true;
            std::vector<std::string> notes;
            if (lambda) {
                bool holds = is_lambda_edge_connected(g, *lambda);
                ok &= holds;
                notes.push_back(std::string("lambda ") + (holds ? "holds" : "fails"));
            }
            if (!orientation_path.empty()) {
                auto d = parse_orientation(g, slurp(orientation_path));
                ResidueMap p(G.mod, residues(g, pvals, G.mod, false));
                auto c = verify_orientation(g, d, p, BoundSpec::floor_ceil_offset(offset));
                ok &= c.ok;
                notes.insert(notes.end(), c.violations.begin(), c.violations.end());
            }
            if (!lambda && orientation_path.empty())
                throw UsageError("verify needs --lambda or --orientation");
            if (G.format == "json") {
                out = {{"ok", ok}, {"notes", notes}};
            } else {
                std::cout << (ok ? "ok" : "violated") << '\n';
                for (const auto& s : notes)
                    std::cout << s << '\n';
            }
            if (G.format == "json")
                std::cout << out.dump(2) << '\n';
            return ok ? kPass : kFailure;
        } else if (*probe) {
            pp.k = G.k;
            pp.seed = G.seed;
            pp.budget = G.budget.value_or(pp.budget);
            auto r = probe_conjecture(probe_id, pp);
            if (G.format == "json") {
                json cx = json::array();
                for (const auto& c : r.counterexamples)
                    cx.push_back({{"index", c.index}, {"payload", c.payload}});
                out = {{"probe", r.id},        {"seed", pp.seed},   {"k", pp.k},
                       {"n", pp.n},            {"count", pp.count}, {"weakened", pp.weaken},
                       {"budget", pp.budget},  {"checked", r.checked}, {"nodes", r.nodes},
                       {"budget_exhausted", r.budget_exhausted}, {"result", r.verdict()},
                       {"counterexamples", cx}};
                std::cout << out.dump(2) << '\n';
            } else {
                std::cout << r.text();
            }
            if (!r.counterexamples.empty())
                return kFailure;
            return r.budget_exhausted ? kBudget : kPass;
        } else if (*suite) {
            sp.budget = G.budget.value_or(0);
            std::vector<std::string> ids = suite_id == "all" ? suite_ids() : std::vector<std::string>{suite_id};
            bool failed = false, budget = false;
            json reports = json::array();
            for (const auto& id : ids) {
                auto r = run_suite(id, G.seed, sp);
                failed |= r.failures > 0;
                budget |= r.budget_hits > 0;
                if (G.format == "json") {
                    json recs = json::array();
                    for (const auto& x : r.records)
                        recs.push_back({{"index", x.index},
                                        {"status", x.status == InstanceStatus::pass   ? "pass"
                                                   : x.status == InstanceStatus::fail ? "fail"
                                                                                      : "budget"},
                                        {"detail", x.detail}});
                    json j = {{"suite", r.id},         {"seed", r.seed},
                              {"instances", r.instances}, {"failures", r.failures},
                              {"budget_exhausted", r.budget_hits}, {"records", recs}};
                    if (timing)
                        j["seconds"] = r.seconds;
                    reports.push_back(j);
                } else {
                    std::cout << r.text(timing);
                }
            }
            if (G.format == "json")
                std::cout << reports.dump(2) << '\n';
            return failed ? kFailure : budget ? kBudget : kPass;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kUsage;
    } catch (const BudgetExhausted& e) {
        std::cerr << "budget exhausted: " << e.what() << '\n';
        return kBudget;
    } catch (const ContractViolation& e) {
        std::cerr << "contract violation: " << e.what() << '\n';
        return kFailure;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << '\n';
        return kFailure;
    }
    if (G.format == "json" && !out.empty())
        std::cout << out.dump(2) << '\n';
    return kPass;
}
