// Built with -mavx2; only reached after runtime detection.
#include "modk/cut_kernel.hpp"

#include <immintrin.h>

namespace modk::kernels::avx2 {

namespace {
    // Four masks per register, one 64-bit lane each.
    inline __m256i cuts4(const CutTable& t, __m256i m)
    {
        const __m256i one = _mm256_set1_epi64x(1);
        __m256i acc = _mm256_setzero_si256();
        const std::size_t n = t.w.size();
        for (std::size_t i = 0; i < n; ++i) {
            __m256i a = _mm256_srl_epi64(m, _mm_cvtsi32_si128(static_cast<int>(t.u[i])));
            __m256i b = _mm256_srl_epi64(m, _mm_cvtsi32_si128(static_cast<int>(t.v[i])));
            __m256i bit = _mm256_and_si256(_mm256_xor_si256(a, b), one);
            __m256i sel = _mm256_sub_epi64(_mm256_setzero_si256(), bit);
            acc = _mm256_add_epi64(acc, _mm256_and_si256(sel, _mm256_set1_epi64x(t.w[i])));
        }
        return acc;
    }

    inline void store4(__m256i acc, std::int32_t* out, std::size_t lanes)
    {
        alignas(32) std::int64_t tmp[4];
        _mm256_store_si256(reinterpret_cast<__m256i*>(tmp), acc);
        for (std::size_t j = 0; j < lanes; ++j)
            out[j] = static_cast<std::int32_t>(tmp[j]);
    }
}

void cut_range(const CutTable& t, std::uint64_t first, std::size_t count, std::int32_t* out)
{
    const __m256i step = _mm256_set_epi64x(3, 2, 1, 0);
    std::size_t i = 0;
    for (; i < count; i += 4) {
        __m256i m = _mm256_add_epi64(_mm256_set1_epi64x(static_cast<long long>(first + i)), step);
        store4(cuts4(t, m), out + i, count - i < 4 ? count - i : 4);
    }
}

void cut_masks(const CutTable& t, const std::uint64_t* masks, std::size_t count, std::int32_t* out)
{
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
        __m256i m = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(masks + i));
        store4(cuts4(t, m), out + i, 4);
    }
    if (i < count) {
        alignas(32) std::uint64_t tail[4] = {0, 0, 0, 0};
        for (std::size_t j = i; j < count; ++j)
            tail[j - i] = masks[j];
        __m256i m = _mm256_load_si256(reinterpret_cast<const __m256i*>(tail));
        store4(cuts4(t, m), out + i, count - i);
    }
}

}  // namespace modk::kernels::avx2
