#include "cmsieve/kernels.hpp"

#include <atomic>

namespace cmsieve::kernels {

std::vector<std::int32_t> quadratic_character_table(std::uint32_t p) {
    std::vector<std::int32_t> chi(p, -1);
    chi[0] = 0;
    for (std::uint64_t x = 1; x <= p / 2; ++x) chi[(x * x) % p] = 1;
    return chi;
}

void diff_table(const std::uint32_t vals[kDiffs], std::uint32_t p, std::uint32_t out[kDiffs]) {
    std::uint32_t row[kDiffs];
    for (int i = 0; i < kDiffs; ++i) row[i] = vals[i] % p;
    for (int k = 0; k < kDiffs; ++k) {
        out[k] = row[0];
        for (int i = 0; i + 1 < kDiffs - k; ++i) row[i] = (row[i + 1] + p - row[i]) % p;
    }
}

static inline std::uint32_t addmod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    std::uint32_t s = a + b;
    return s >= p ? s - p : s;
}

void charsum_scalar(const std::int32_t* chi, std::uint32_t p, const std::uint32_t* diffs,
                    std::size_t lanes, std::uint32_t len, std::int64_t* out) {
    for (std::size_t l = 0; l < lanes; ++l) {
        std::uint32_t d[kDiffs];
        for (int k = 0; k < kDiffs; ++k) d[k] = diffs[l * kDiffs + k];
        std::int64_t acc = 0;
        for (std::uint32_t i = 0; i < len; ++i) {
            acc += chi[d[0]];
            for (int k = 0; k + 1 < kDiffs; ++k) d[k] = addmod(d[k], d[k + 1], p);
        }
        out[l] = acc;
    }
}

// --- dispatch ---

bool avx2_supported() {
#if defined(CMSIEVE_HAVE_AVX2)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

static std::atomic<int> g_forced{-1};

void force_isa(Isa isa) { g_forced = (int)isa; }

Isa active_isa() {
    int f = g_forced.load();
    if (f == (int)Isa::Scalar) return Isa::Scalar;
    if (f == (int)Isa::Avx2 && !avx2_supported()) return Isa::Scalar;
    return avx2_supported() ? Isa::Avx2 : Isa::Scalar;
}

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

void charsum(const std::int32_t* chi, std::uint32_t p, const std::uint32_t* diffs,
             std::size_t lanes, std::uint32_t len, std::int64_t* out) {
#if defined(CMSIEVE_HAVE_AVX2)
    if (active_isa() == Isa::Avx2) {
        charsum_avx2(chi, p, diffs, lanes, len, out);
        return;
    }
#endif
    charsum_scalar(chi, p, diffs, lanes, len, out);
}

}  // namespace cmsieve::kernels
