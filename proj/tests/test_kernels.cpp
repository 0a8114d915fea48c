#include "cmsieve/kernels.hpp"
#include "oracle.hpp"

#include <doctest.h>

#include <random>

using namespace cmsieve;
namespace K = cmsieve::kernels;

namespace {

// Naive: evaluate the polynomial through its 7 starting values by Lagrange
// stepping is overkill; instead step a degree-6 polynomial given by coefficients.
std::int64_t naive_sum(const std::vector<std::uint32_t>& coef, std::uint32_t p, std::uint32_t u0, std::uint32_t len) {
    std::int64_t s = 0;
    for (std::uint32_t k = 0; k < len; ++k) {
        oracle::u64 u = (u0 + (oracle::u64)k) % p, v = 0;
        for (size_t i = coef.size(); i-- > 0;) v = (v * u + coef[i]) % p;
        if (v == 0) continue;
        s += oracle::pw(v, (p - 1) / 2, p) == 1 ? 1 : -1;
    }
    return s;
}

std::vector<std::uint32_t> lane_for(const std::vector<std::uint32_t>& coef, std::uint32_t p, std::uint32_t u0) {
    std::uint32_t vals[K::kDiffs], out[K::kDiffs];
    for (int j = 0; j < K::kDiffs; ++j) {
        oracle::u64 u = (u0 + (oracle::u64)j) % p, v = 0;
        for (size_t i = coef.size(); i-- > 0;) v = (v * u + coef[i]) % p;
        vals[j] = (std::uint32_t)v;
    }
    K::diff_table(vals, p, out);
    return {out, out + K::kDiffs};
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("character table") {
    for (std::uint32_t p : {3u, 5u, 7u, 101u}) {
        auto chi = K::quadratic_character_table(p);
        REQUIRE(chi.size() == p);
        CHECK(chi[0] == 0);
        for (std::uint32_t a = 1; a < p; ++a)
            CHECK(chi[a] == (oracle::pw(a, (p - 1) / 2, p) == 1 ? 1 : -1));
    }
}

TEST_CASE("scalar kernel matches naive evaluation") {
    std::mt19937_64 rng(21);
    for (int r = 0; r < 60; ++r) {
        std::uint32_t ps[] = {7, 13, 101, 1009, 65537};
        std::uint32_t p = ps[rng() % 5];
        auto chi = K::quadratic_character_table(p);
        size_t lanes = 1 + rng() % 9;
        std::uint32_t len = (std::uint32_t)(rng() % 700);
        std::vector<std::vector<std::uint32_t>> coefs(lanes);
        std::vector<std::uint32_t> u0(lanes), d;
        for (size_t l = 0; l < lanes; ++l) {
            coefs[l].resize(1 + rng() % 7);
            for (auto& c : coefs[l]) c = (std::uint32_t)(rng() % p);
            u0[l] = (std::uint32_t)(rng() % p);
            auto ln = lane_for(coefs[l], p, u0[l]);
            d.insert(d.end(), ln.begin(), ln.end());
        }
        std::vector<std::int64_t> out(lanes);
        K::charsum_scalar(chi.data(), p, d.data(), lanes, len, out.data());
        for (size_t l = 0; l < lanes; ++l) CHECK(out[l] == naive_sum(coefs[l], p, u0[l], len));
    }
}

TEST_CASE("avx2 kernel is bit-identical to scalar") {
    if (!K::avx2_supported()) {
        MESSAGE("no AVX2 on this host; skipped");
        return;
    }
#if defined(CMSIEVE_HAVE_AVX2)
    std::mt19937_64 rng(22);
    for (int r = 0; r < 300; ++r) {
        std::uint32_t ps[] = {3, 5, 13, 101, 997, 65537, 1000003, 2147483647u};
        std::uint32_t p = ps[rng() % 8];
        std::vector<std::int32_t> chi;
        if (p < 20000000) chi = K::quadratic_character_table(p);
        else continue;
        size_t lanes = 1 + rng() % 41;  // includes ragged tails
        std::uint32_t len = (std::uint32_t)(rng() % 2500);
        std::vector<std::uint32_t> d(lanes * K::kDiffs);
        for (auto& v : d) v = (std::uint32_t)(rng() % p);
        std::vector<std::int64_t> a(lanes), b(lanes);
        K::charsum_scalar(chi.data(), p, d.data(), lanes, len, a.data());
        K::charsum_avx2(chi.data(), p, d.data(), lanes, len, b.data());
        REQUIRE(a == b);
    }
#endif
}

TEST_CASE("dispatch honours force_isa") {
    K::force_isa(K::Isa::Scalar);
    CHECK(K::active_isa() == K::Isa::Scalar);
    std::uint32_t p = 101;
    auto chi = K::quadratic_character_table(p);
    std::vector<std::uint32_t> coef{100, 100, 0, 1};  // x^3 - x - 1 style
    auto d = lane_for(coef, p, 0);
    std::int64_t s1 = 0, s2 = 0;
    K::charsum(chi.data(), p, d.data(), 1, p, &s1);
    if (K::avx2_supported()) {
        K::force_isa(K::Isa::Avx2);
        CHECK(K::active_isa() == K::Isa::Avx2);
        K::charsum(chi.data(), p, d.data(), 1, p, &s2);
        CHECK(s1 == s2);
    }
    CHECK(s1 == naive_sum(coef, p, 0, p));
    K::force_isa(K::avx2_supported() ? K::Isa::Avx2 : K::Isa::Scalar);
    CHECK(std::string(K::isa_name(K::Isa::Scalar)) != std::string(K::isa_name(K::Isa::Avx2)));
}

}
