#pragma once

#include "modk/graph.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

// Batched evaluation of d(A) = sum of w(uv) over pairs with exactly one end in
// A, for many vertex masks at once. A scalar reference and an AVX2 variant are
// chosen at runtime; both must agree bit for bit.
namespace modk::kernels {

// Parallel edges collapsed to weighted pairs, endpoints already relabelled.
struct CutTable {
    std::vector<std::uint32_t> u;
    std::vector<std::uint32_t> v;
    std::vector<std::int64_t> w;
};

// relabel[x] is the bit position used for vertex x (0..63).
CutTable make_cut_table(const MultiGraph& g, const std::vector<int>& relabel);
CutTable make_cut_table(const MultiGraph& g);

enum class Isa { scalar, avx2 };

bool avx2_available();
Isa active_isa();
// Pins the dispatch choice (tests, benchmarks); nullopt restores detection.
void force_isa(std::optional<Isa> isa);
const char* isa_name(Isa isa);

// out[i] = d(first + i) for i < count.
void cut_range(const CutTable& t, std::uint64_t first, std::size_t count, std::int32_t* out);
void cut_masks(const CutTable& t, const std::uint64_t* masks, std::size_t count, std::int32_t* out);

namespace scalar {
    void cut_range(const CutTable& t, std::uint64_t first, std::size_t count, std::int32_t* out);
    void cut_masks(const CutTable& t, const std::uint64_t* masks, std::size_t count, std::int32_t* out);
}

namespace avx2 {
    void cut_range(const CutTable& t, std::uint64_t first, std::size_t count, std::int32_t* out);
    void cut_masks(const CutTable& t, const std::uint64_t* masks, std::size_t count, std::int32_t* out);
}

}  // namespace modk::kernels
