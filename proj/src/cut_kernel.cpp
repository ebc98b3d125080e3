#include "modk/cut_kernel.hpp"

#include <atomic>
#include <map>
#include <numeric>
#include <stdexcept>

namespace modk::kernels {

CutTable make_cut_table(const MultiGraph& g, const std::vector<int>& relabel)
{
    std::map<std::pair<int, int>, std::int64_t> w;
    for (const auto& e : g.edges()) {
        int a = relabel.at(e.u), b = relabel.at(e.v);
        if (a < 0 || a > 63 || b < 0 || b > 63)
            throw std::invalid_argument("make_cut_table: bit position out of range");
        if (a > b)
            std::swap(a, b);
        ++w[{a, b}];
    }
    CutTable t;
    for (const auto& [k, c] : w) {
        t.u.push_back(static_cast<std::uint32_t>(k.first));
        t.v.push_back(static_cast<std::uint32_t>(k.second));
        t.w.push_back(c);
    }
    return t;
}

CutTable make_cut_table(const MultiGraph& g)
{
    std::vector<int> id(g.vertex_count());
    std::iota(id.begin(), id.end(), 0);
    return make_cut_table(g, id);
}

namespace {
    std::atomic<int> forced{-1};

    bool detect_avx2()
    {
#if defined(MODK_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
        return __builtin_cpu_supports("avx2");
#else
        return false;
#endif
    }
}

bool avx2_available()
{
    static const bool ok = detect_avx2();
    return ok;
}

Isa active_isa()
{
    auto f = forced.load(std::memory_order_relaxed);
    if (f >= 0)
        return static_cast<Isa>(f);
    return avx2_available() ? Isa::avx2 : Isa::scalar;
}

void force_isa(std::optional<Isa> isa)
{
    if (isa == Isa::avx2 && ! avx2_available())
        throw std::invalid_argument("AVX2 kernel not available on this machine");
    forced.store(isa ? static_cast<int>(*isa) : -1, std::memory_order_relaxed);
}

const char* isa_name(Isa isa)
{
    return isa == Isa::avx2 ? "avx2" : "scalar";
}

void cut_range(const CutTable& t, std::uint64_t first, std::size_t count, std::int32_t* out)
{
    if (active_isa() == Isa::avx2)
        avx2::cut_range(t, first, count, out);
    else
        scalar::cut_range(t, first, count, out);
}

void cut_masks(const CutTable& t, const std::uint64_t* masks, std::size_t count, std::int32_t* out)
{
    if (active_isa() == Isa::avx2)
        avx2::cut_masks(t, masks, count, out);
    else
        scalar::cut_masks(t, masks, count, out);
}

namespace scalar {
    namespace {
        std::int32_t one(const CutTable& t, std::uint64_t m)
        {
            std::int64_t acc = 0;
            for (std::size_t i = 0; i < t.w.size(); ++i)
                acc += static_cast<std::int64_t>(((m >> t.u[i]) ^ (m >> t.v[i])) & 1ULL) * t.w[i];
            return static_cast<std::int32_t>(acc);
        }
    }

    void cut_range(const CutTable& t, std::uint64_t first, std::size_t count, std::int32_t* out)
    {
        for (std::size_t i = 0; i < count; ++i)
            out[i] = one(t, first + i);
    }

    void cut_masks(const CutTable& t, const std::uint64_t* masks, std::size_t count, std::int32_t* out)
    {
        for (std::size_t i = 0; i < count; ++i)
            out[i] = one(t, masks[i]);
    }
}

#if ! defined(MODK_HAVE_AVX2)
namespace avx2 {
    void cut_range(const CutTable& t, std::uint64_t first, std::size_t count, std::int32_t* out)
    {
        scalar::cut_range(t, first, count, out);
    }

    void cut_masks(const CutTable& t, const std::uint64_t* masks, std::size_t count, std::int32_t* out)
    {
        scalar::cut_masks(t, masks, count, out);
    }
}
#endif

}  // namespace modk::kernels
