#include "cmsieve/curve_orders.hpp"
#include "oracle.hpp"

#include <doctest.h>

#include <cmath>

using namespace cmsieve;

TEST_SUITE("curve_orders") {

TEST_CASE("frobenius examples") {
    FrobeniusData f5 = frobenius(5), f13 = frobenius(13), f3 = frobenius(3);
    CHECK(f5.a_p == -2);
    CHECK(f13.a_p == 6);
    CHECK(f3.supersingular);
    CHECK(f3.a_p == 0);
    CHECK(frobenius(7).a_p == 0);
    CHECK_THROWS(frobenius(2));
}

TEST_CASE("orders match enumeration for small p") {
    for (oracle::u64 p = 3; p < 60; ++p) {
        if (!oracle::is_prime(p)) continue;
        for (unsigned n = 1; n <= 2; ++n) {
            oracle::u64 N = oracle::count_points(p, n);
            CHECK(order_pn(p, n) == BigInt((unsigned long)N));
            CHECK(brute_force_count(p, n) == N);
        }
    }
}

TEST_CASE("order examples") {
    CHECK(order_pn(5, 1) == 8);
    CHECK(order_pn(5, 2) == 32);
    CHECK(order_pn(13, 1) == 8);
    CHECK(order_pn(13, 2) == 160);
    CHECK(order_pn(3, 1) == 4);
    CHECK(brute_force_count(7, 1) == 8);
    CHECK(cyclotomic_factor(13, 1) == 8);
    CHECK(cyclotomic_factor(13, 2) == 20);
    CHECK_THROWS(cyclotomic_factor(7, 1));
    CHECK_THROWS(order_pn(5, 0));
    CHECK(order_pn(3, 2) == 16);
}

TEST_CASE("Hasse bound and divisibility by 8 and 32") {
    for (std::uint32_t p : primes_upto(20000)) {
        if (p == 2) continue;
        i64 a = frobenius(p).a_p;
        REQUIRE((double)(a * a) <= 4.0 * p);
        if (p % 4 == 1) {
            CHECK(order_pn(p, 1) % 8 == 0);
            CHECK(order_pn(p, 2) % 32 == 0);
        }
    }
}

TEST_CASE("cyclotomic factors") {
    CHECK(cyclotomic_poly(1) == std::vector<BigInt>{-1, 1});
    CHECK(cyclotomic_poly(3) == std::vector<BigInt>{1, 1, 1});
    CHECK(cyclotomic_poly(12) == std::vector<BigInt>{1, 0, -1, 0, 1});
    // N(Phi_d(pi)) from pi directly, as a Gaussian integer evaluation
    for (u64 p : {5, 13, 17, 29, 37, 101}) {
        GaussInt pi = frobenius(p).pi;
        for (unsigned d : {1u, 2u, 3u, 4u, 5u, 6u, 8u, 12u}) {
            auto c = cyclotomic_poly(d);
            GaussInt v(0, 0);
            for (size_t i = c.size(); i-- > 0;) v = v * pi + GaussInt(c[i], 0);
            CHECK(cyclotomic_factor(p, d) == v.norm());
        }
        for (unsigned n = 1; n <= 8; ++n) {
            BigInt prod = 1;
            for (u64 d : divisors(n)) prod *= cyclotomic_factor(p, (unsigned)d);
            CHECK(prod == order_pn(p, n));
        }
    }
}

TEST_CASE("group structure matches the group-exponent oracle") {
    for (oracle::u64 p = 3; p <= 50; ++p) {
        if (!oracle::is_prime(p)) continue;
        auto [d, e] = oracle::structure(p, 1);
        GroupStructure g = group_structure(p, 1);
        CHECK(g.d == d);
        CHECK(g.e == e);
    }
    for (oracle::u64 p : {3, 5, 7, 11, 13}) {
        auto [d, e] = oracle::structure(p, 2);
        GroupStructure g = group_structure(p, 2);
        CHECK(g.d == d);
        CHECK(g.e == e);
    }
}

TEST_CASE("group structure examples") {
    GroupStructure a = group_structure(13, 1), b = group_structure(5, 2), c = group_structure(29, 1);
    CHECK(a.d == 2);
    CHECK(a.e == 4);
    CHECK(b.d == 4);
    CHECK(b.e == 8);
    CHECK(c.d == 2);
    CHECK(c.e == 20);
    CHECK_THROWS(brute_force_count(10007, 2, 1000));
}

TEST_CASE("empirical d_E") {
    CHECK(empirical_dE(1, 1000) == 8);
    CHECK(empirical_dE(2, 1000) == 32);
    CHECK(empirical_dE(3, 1000) == 8);
    // gcd oracle from enumerated counts
    oracle::u64 g = 0;
    for (oracle::u64 p = 5; p <= 200; p += 4)
        if (oracle::is_prime(p)) g = std::gcd(g, oracle::count_points(p, 1));
    CHECK(g == 8);
}

TEST_CASE("trace_by_charsum agrees with the CM curve and enumeration") {
    for (std::uint32_t p : primes_upto(3000)) {
        if (p < 5) continue;
        CHECK(trace_by_charsum(-1, 0, p) == frobenius(p).a_p);
    }
    // y^2 = x^3 + x + 1 against point counting
    for (oracle::u64 p : {5, 7, 11, 13, 101, 1009}) {
        i64 s = 0;
        for (oracle::u64 x = 0; x < p; ++x) {
            oracle::u64 v = (x * x % p * x + x + 1) % p;
            if (v) s += oracle::pw(v, (p - 1) / 2, p) == 1 ? 1 : -1;
        }
        CHECK(trace_by_charsum(1, 1, p) == -s);
    }
}

TEST_CASE("order records") {
    OrderRecord r = make_order_record(13, {3, 5});
    CHECK(r.A1 == 1);
    CHECK(r.A2 == 5);
    CHECK(r.gcd12 == 1);
    CHECK(r.A_ell.at(3) == cyclotomic_factor(13, 3));
    CHECK(r.A_ell.at(5) == cyclotomic_factor(13, 5));
    for (u64 p : {5, 17, 29, 1009, 99989}) {
        OrderRecord q = make_order_record(p, {});
        CHECK(8 * q.A1 == (long)p + 1 - q.a_p);
        CHECK(4 * q.A2 == (long)p + 1 + q.a_p);
        CHECK(32 * q.A1 * q.A2 == order_pn(p, 2));
    }
    FactorStats s = factor_stats(BigInt(360));
    CHECK(s.omega == 3);
    CHECK(s.Omega == 6);
    CHECK_FALSE(s.squarefree);
    CHECK(s.smallest == 2);
    CHECK(factor_stats(BigInt(1)).smallest == 0);
}

}
