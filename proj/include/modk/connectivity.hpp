#pragma once

#include "modk/cut_kernel.hpp"
#include "modk/graph.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace modk {

// Exhaustive subset checks run only up to this many free vertices.
inline constexpr int kExhaustiveGuard = 20;

enum class ParityTag { odd_cut, even_cut, odd_cardinality, even_cardinality };

struct CutCertificate {
    VertexSet witness;
    int cut_value = 0;
    ParityTag tag = ParityTag::even_cut;
};

// Enumerates d(A) for every nonempty A contained in `free`, through the batch
// kernel. Vertices outside `free` never belong to A.
class SubsetCuts {
public:
    SubsetCuts(const MultiGraph& g, VertexSet free);

    int free_count() const { return static_cast<int>(free_.size()); }
    VertexSet to_set(std::uint64_t local) const;
    int sum_over(std::uint64_t local, const std::vector<int>& weight) const;

    // fn(local_mask, d) for local_mask in [1, 2^f); stops when fn returns false.
    template <typename Fn>
    void scan(Fn fn) const
    {
        const std::uint64_t end = 1ULL << free_.size();
        std::vector<std::int32_t> buf(kChunk);
        for (std::uint64_t first = 1; first < end; first += kChunk) {
            auto count = static_cast<std::size_t>(std::min<std::uint64_t>(kChunk, end - first));
            kernels::cut_range(table_, first, count, buf.data());
            for (std::size_t i = 0; i < count; ++i)
                if (! fn(first + i, static_cast<int>(buf[i])))
                    return;
        }
    }

private:
    static constexpr std::uint64_t kChunk = 2048;
    std::vector<Vertex> free_;
    kernels::CutTable table_;
};

struct EdgeConnectivity {
    int lambda = 0;
    CutCertificate certificate;
    bool exhaustive = false;  // witness is the lexicographically smallest one
};

EdgeConnectivity edge_connectivity(const MultiGraph& g);
// True when |V| < 2 or every proper nonempty cut has value >= lambda.
bool is_lambda_edge_connected(const MultiGraph& g, int lambda);
int local_edge_connectivity(const MultiGraph& g, Vertex s, Vertex t);
// Minimum d(A) over nonempty A strictly inside V - u; nullopt when no such A.
std::optional<int> restricted_edge_connectivity(const MultiGraph& g, Vertex excluded);

enum class ParityMode { cut_parity, set_cardinality };
enum class Verdict { holds, violated, unverified };

struct ParityCheck {
    Verdict verdict = Verdict::holds;
    std::optional<CutCertificate> violation;

    bool holds() const { return verdict == Verdict::holds; }
};

// cut_parity: d(A) >= 2m when even, >= 2m'+1 when odd.
// set_cardinality: d(A) >= 2m when |A| even, >= 2m' when |A| odd.
// With `excluded`, A ranges over nonempty proper subsets of V - excluded.
ParityCheck is_parity_edge_connected(const MultiGraph& g, int m, int m_prime, ParityMode mode,
                                     std::optional<Vertex> excluded = std::nullopt);

struct BipartiteIndex {
    int bi = 0;
    std::vector<EdgeId> deleted;
    std::vector<int> side;  // 0/1 colouring realizing the optimum
};

BipartiteIndex bipartite_index(const MultiGraph& g);
bool is_bipartite(const MultiGraph& g, std::vector<int>* side = nullptr);

struct EssentialConnectivity {
    std::optional<int> value;  // nullopt: every cut is trivial (unbounded)
    int edge_bound = 0;        // |E|, reported alongside the sentinel
    std::optional<CutCertificate> certificate;
};

EssentialConnectivity essential_edge_connectivity(const MultiGraph& g);

}  // namespace modk
