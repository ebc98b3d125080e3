#pragma once

#include "modk/graph.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace modk {

using Rng = std::mt19937_64;

// Independent stream per (seed, index), so instances replay in any order.
Rng instance_rng(std::uint64_t seed, std::uint64_t index);

// Union of c random Hamiltonian cycles: 2c-regular multigraph.
MultiGraph random_cycles_union(int n, int c, Rng& rng);
MultiGraph random_multigraph(int n, int m, Rng& rng);
// Vertex i joined to i + j (mod n) for each jump j.
MultiGraph circulant(int n, const std::vector<int>& jumps);
// Cycle of the given length times the complete graph of the given order.
MultiGraph cartesian_cycle_complete(int cycle_length, int complete_order);

enum class GeneratorKind { cycles_union, circulant, cartesian, scaled };

struct Ensemble {
    GeneratorKind kind = GeneratorKind::cycles_union;
    std::uint64_t seed = 1;
    int count = 1;
    int n = 6;
    int cycles = 2;               // cycles_union
    std::vector<int> jumps;       // circulant
    int cycle_length = 3;         // cartesian
    int complete_order = 5;       // cartesian
    MultiGraph base;              // scaled
    int factor = 2;               // scaled
    int min_lambda = 0;           // declared edge-connectivity, re-verified
    int max_attempts = 1000;      // regenerations per random instance
};

// Deterministic under the seed; every graph meets min_lambda.
std::vector<MultiGraph> gen_graphs(const Ensemble& e);

GeneratorKind parse_generator_kind(const std::string& name);
const char* generator_name(GeneratorKind kind);

}  // namespace modk
