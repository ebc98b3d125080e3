#include "modk/generators.hpp"

#include "modk/connectivity.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace modk {

Rng instance_rng(std::uint64_t seed, std::uint64_t index)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return Rng(seq);
}

MultiGraph random_cycles_union(int n, int c, Rng& rng)
{
    if (n < 2 || c < 0)
        throw std::invalid_argument("random_cycles_union: need n >= 2 and c >= 0");
    MultiGraph g(n);
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int j = 0; j < c; ++j) {
        std::shuffle(perm.begin(), perm.end(), rng);
        if (n == 2) {
            g.add_edge(0, 1);
            g.add_edge(0, 1);
            continue;
        }
        for (int i = 0; i < n; ++i)
            g.add_edge(perm[i], perm[(i + 1) % n]);
    }
    return g;
}

MultiGraph random_multigraph(int n, int m, Rng& rng)
{
    if (n < 2 && m > 0)
        throw std::invalid_argument("random_multigraph: edges need two vertices");
    std::uniform_int_distribution<int> pick(0, n - 1);
    MultiGraph g(n);
    while (g.edge_count() < m) {
        int a = pick(rng), b = pick(rng);
        if (a != b)
            g.add_edge(a, b);
    }
    return g;
}

MultiGraph circulant(int n, const std::vector<int>& jumps)
{
    if (n < 2)
        throw std::invalid_argument("circulant: need n >= 2");
    MultiGraph g(n);
    for (int j : jumps) {
        if (j <= 0 || j >= n)
            throw std::invalid_argument("circulant: jump out of range");
        // A jump of n/2 pairs each vertex once.
        int limit = 2 * j == n ? n / 2 : n;
        for (int i = 0; i < limit; ++i)
            g.add_edge(i, (i + j) % n);
    }
    return g;
}

MultiGraph cartesian_cycle_complete(int cycle_length, int complete_order)
{
    if (cycle_length < 3 || complete_order < 1)
        throw std::invalid_argument("cartesian_cycle_complete: need a cycle of length >= 3");
    MultiGraph g(cycle_length * complete_order);
    auto id = [&](int i, int j) { return i * complete_order + j; };
    for (int i = 0; i < cycle_length; ++i)
        for (int j = 0; j < complete_order; ++j) {
            g.add_edge(id(i, j), id((i + 1) % cycle_length, j));
            for (int l = j + 1; l < complete_order; ++l)
                g.add_edge(id(i, j), id(i, l));
        }
    return g;
}

std::vector<MultiGraph> gen_graphs(const Ensemble& e)
{
    if (e.count < 0)
        throw std::invalid_argument("gen_graphs: negative count");
    std::vector<MultiGraph> out;
    for (int i = 0; i < e.count; ++i) {
        Rng rng = instance_rng(e.seed, static_cast<std::uint64_t>(i));
        bool random = e.kind == GeneratorKind::cycles_union;
        int attempts = 0;
        for (;;) {
            MultiGraph g;
            switch (e.kind) {
            case GeneratorKind::cycles_union:
                g = random_cycles_union(e.n, e.cycles, rng);
                break;
            case GeneratorKind::circulant:
                g = circulant(e.n, e.jumps);
                break;
            case GeneratorKind::cartesian:
                g = cartesian_cycle_complete(e.cycle_length, e.complete_order);
                break;
            case GeneratorKind::scaled:
                g = scaled(e.base, e.factor);
                break;
            }
            if (e.min_lambda <= 0 || is_lambda_edge_connected(g, e.min_lambda)) {
                out.push_back(std::move(g));
                break;
            }
            if (!random || ++attempts >= e.max_attempts)
                throw std::invalid_argument("gen_graphs: generator cannot meet edge-connectivity " +
                                            std::to_string(e.min_lambda));
        }
    }
    return out;
}

GeneratorKind parse_generator_kind(const std::string& name)
{
    if (name == "cycles")
        return GeneratorKind::cycles_union;
    if (name == "circulant")
        return GeneratorKind::circulant;
    if (name == "cartesian")
        return GeneratorKind::cartesian;
    if (name == "scaled")
        return GeneratorKind::scaled;
    throw std::invalid_argument("unknown generator '" + name + "'");
}

const char* generator_name(GeneratorKind kind)
{
    switch (kind) {
    case GeneratorKind::cycles_union:
        return "cycles";
    case GeneratorKind::circulant:
        return "circulant";
    case GeneratorKind::cartesian:
        return "cartesian";
    case GeneratorKind::scaled:
        return "scaled";
    }
    return "?";
}

}  // namespace modk
