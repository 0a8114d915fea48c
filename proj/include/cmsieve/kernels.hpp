#pragma once
// Character-sum kernels for point counting.
//
// A lane carries the forward differences D[0..6] of a polynomial of degree <= 6
// over F_p.  Stepping the lane k times visits P(u0), P(u0+1), ..., and the
// kernel sums chi(P(u)) where chi is a lookup table of the quadratic character.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace cmsieve::kernels {

constexpr int kDiffs = 7;

enum class Isa { Scalar, Avx2 };

// Table chi[a] = (a/p) for 0 <= a < p.
std::vector<std::int32_t> quadratic_character_table(std::uint32_t p);

// Forward-difference table from 7 consecutive values P(u0..u0+6) mod p.
void diff_table(const std::uint32_t vals[kDiffs], std::uint32_t p, std::uint32_t out[kDiffs]);

// diffs: lanes * 7 values, lane-major.  out[l] = sum over len steps of lane l.
// Requires p < 2^31 and len < 2^31.
void charsum_scalar(const std::int32_t* chi, std::uint32_t p, const std::uint32_t* diffs,
                    std::size_t lanes, std::uint32_t len, std::int64_t* out);
#if defined(CMSIEVE_HAVE_AVX2)
void charsum_avx2(const std::int32_t* chi, std::uint32_t p, const std::uint32_t* diffs,
                  std::size_t lanes, std::uint32_t len, std::int64_t* out);
#endif

// Runtime-selected variant.
void charsum(const std::int32_t* chi, std::uint32_t p, const std::uint32_t* diffs,
             std::size_t lanes, std::uint32_t len, std::int64_t* out);

bool avx2_supported();
Isa active_isa();
const char* isa_name(Isa isa);
// Force the scalar path (tests and benchmarking).
void force_isa(Isa isa);

}  // namespace cmsieve::kernels
