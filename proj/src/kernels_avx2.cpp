// AVX2 variant of the character-sum kernel: eight lanes per register.
#include "cmsieve/kernels.hpp"

#include <immintrin.h>

namespace cmsieve::kernels {

static inline __m256i addmod8(__m256i a, __m256i b, __m256i p) {
    __m256i s = _mm256_add_epi32(a, b);
    return _mm256_min_epu32(s, _mm256_sub_epi32(s, p));
}

void charsum_avx2(const std::int32_t* chi, std::uint32_t p, const std::uint32_t* diffs,
                  std::size_t lanes, std::uint32_t len, std::int64_t* out) {
    const __m256i P = _mm256_set1_epi32((int)p);
    std::size_t l = 0;
    for (; l + 8 <= lanes; l += 8) {
        __m256i d[kDiffs];
        alignas(32) std::uint32_t col[8];
        for (int k = 0; k < kDiffs; ++k) {
            for (int j = 0; j < 8; ++j) col[j] = diffs[(l + j) * kDiffs + k];
            d[k] = _mm256_load_si256(reinterpret_cast<const __m256i*>(col));
        }
        __m256i acc = _mm256_setzero_si256();
        // 32-bit lane accumulators are exact because len < 2^31.
        for (std::uint32_t i = 0; i < len; ++i) {
            acc = _mm256_add_epi32(acc, _mm256_i32gather_epi32(chi, d[0], 4));
            d[0] = addmod8(d[0], d[1], P);
            d[1] = addmod8(d[1], d[2], P);
            d[2] = addmod8(d[2], d[3], P);
            d[3] = addmod8(d[3], d[4], P);
            d[4] = addmod8(d[4], d[5], P);
            d[5] = addmod8(d[5], d[6], P);
        }
        alignas(32) std::int32_t res[8];
        _mm256_store_si256(reinterpret_cast<__m256i*>(res), acc);
        for (int j = 0; j < 8; ++j) out[l + j] = res[j];
    }
    if (l < lanes) charsum_scalar(chi, p, diffs + l * kDiffs, lanes - l, len, out + l);
}

}  // namespace cmsieve::kernels
