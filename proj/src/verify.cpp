#include "cmsieve/verify.hpp"

#include "cmsieve/census.hpp"
#include "cmsieve/curve_orders.hpp"
#include "cmsieve/gl2.hpp"
#include "cmsieve/kernels.hpp"
#include "cmsieve/sieve_numerics.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

namespace cmsieve {

namespace {

struct Ctx {
    bool quick;
    std::mt19937_64 rng;
};

using Fn = std::function<std::string(Ctx&)>;  // empty string: pass

std::string check_split_prime(Ctx& c) {
    const u64 top = c.quick ? 2000 : 9999;
    for (u64 p : primes_upto((std::uint32_t)top)) {
        if (p % 4 != 1) continue;
        GaussInt pi = split_prime(p), s = split_prime_search(p);
        bool same = associates(pi, s) || associates(pi.conj(), s);
        if (pi.norm() != BigInt((unsigned long)p) || !is_primary(pi) || !same)
            return "split_prime wrong at p=" + std::to_string(p);
    }
    return "";
}

std::string check_simd(Ctx& c) {
    if (!kernels::avx2_supported()) return "";
#if defined(CMSIEVE_HAVE_AVX2)
    const int rounds = c.quick ? 20 : 200;
    const std::uint32_t ps[] = {3, 5, 13, 101, 997, 65537, 1000003};
    for (int r = 0; r < rounds; ++r) {
        std::uint32_t p = ps[c.rng() % 7];
        auto chi = kernels::quadratic_character_table(p);
        size_t lanes = 1 + c.rng() % 37;
        std::uint32_t len = (std::uint32_t)(c.rng() % 3000);
        std::vector<std::uint32_t> d(lanes * kernels::kDiffs);
        for (auto& v : d) v = (std::uint32_t)(c.rng() % p);
        std::vector<std::int64_t> a(lanes), b(lanes);
        kernels::charsum_scalar(chi.data(), p, d.data(), lanes, len, a.data());
        kernels::charsum_avx2(chi.data(), p, d.data(), lanes, len, b.data());
        if (a != b) return "scalar and avx2 disagree at p=" + std::to_string(p);
    }
#else
    (void)c;
#endif
    return "";
}

std::string check_orders(Ctx& c) {
    const u64 top = c.quick ? 400 : 10000;
    for (u64 p : primes_upto((std::uint32_t)top)) {
        if (p == 2) continue;
        for (unsigned n = 1; n <= 2; ++n)
            if (order_pn(p, n) != BigInt((unsigned long)brute_force_count(p, n)))
                return "order mismatch p=" + std::to_string(p) + " n=" + std::to_string(n);
    }
    return "";
}

std::string check_cyclotomic(Ctx& c) {
    const u64 top = c.quick ? 2000 : 100000;
    std::string err;
    for_each_primary_prime(5, top, [&](u64 p, const GaussInt&) {
        if (!err.empty()) return;
        i64 a = frobenius(p).a_p;
        for (unsigned n = 1; n <= 12; ++n) {
            BigInt prod = 1;
            for (u64 d : divisors(n)) prod *= cyclotomic_norm_from_trace(a, p, (unsigned)d);
            if (prod != order_from_trace(a, p, n)) {
                err = "product identity fails p=" + std::to_string(p) + " n=" + std::to_string(n);
                return;
            }
        }
    });
    return err;
}

std::string check_structure(Ctx& c) {
    const u64 top = c.quick ? 300 : 1500;
    for (u64 p : primes_upto((std::uint32_t)top)) {
        if (p == 2) continue;
        for (unsigned n = 1; n <= 2; ++n) {
            if (n == 2 && p > 400) continue;
            GroupStructure g = group_structure(p, n);
            u64 q = n == 1 ? p : p * p;
            if (g.d * g.e != brute_force_count(p, n) || g.e % g.d || (q - 1) % g.d)
                return "structure invariant fails p=" + std::to_string(p);
        }
    }
    return "";
}

std::string check_coprimality(Ctx& c) {
    const u64 top = c.quick ? 20000 : 1000000;
    for (u64 p : primes_upto((std::uint32_t)top))
        if (p % 4 == 1 && !verify_coprimality(p)) return "coprimality fails at p=" + std::to_string(p);
    return "";
}

std::string check_witness(Ctx& c) {
    const u64 top = c.quick ? 20000 : 1000000;
    for (u64 p : primes_upto((std::uint32_t)top)) {
        if (p % 4 != 1) continue;
        i64 a = frobenius(p).a_p;
        for (u64 q : common_factor_witness(p)) {
            u64 aa = (u64)std::llabs(a);
            if (aa % q != 0 || q % 4 != 1 || q > aa + 2)
                return "witness postcondition fails p=" + std::to_string(p) + " q=" + std::to_string(q);
        }
    }
    return "";
}

std::string check_mobius_pair(Ctx& c) {
    const int rounds = c.quick ? 200 : 1000;
    const u64 sf[] = {1, 2, 3, 5, 6, 7, 10, 15, 21, 30, 35, 42, 105, 210};
    for (int r = 0; r < rounds; ++r) {
        std::vector<std::pair<u64, u64>> C(c.rng() % 60);
        for (auto& [a, b] : C) {
            a = 1 + c.rng() % 420;
            b = 1 + c.rng() % 420;
        }
        u64 d1 = sf[c.rng() % 14], d2 = sf[c.rng() % 14];
        if (mobius_pair_inversion(C, d1, d2) != direct_pair_count(C, d1, d2))
            return "inversion mismatch d1=" + std::to_string(d1) + " d2=" + std::to_string(d2);
    }
    return "";
}

std::string check_h_condition(Ctx& c) {
    const u64 top = c.quick ? 10000 : 100000;
    for (u64 p : primes_upto((std::uint32_t)top)) {
        Rational a = density_h(p, 1), b = density_h(1, p), ab = density_h(p, p);
        if (!(a + b - 1 < ab && ab <= a + b)) return "h-condition fails at p=" + std::to_string(p);
    }
    return "";
}

std::string check_f_le_F(Ctx& c) {
    const double step = c.quick ? 1e-2 : 1e-3;
    const auto& B = BoundFns::instance();
    for (double s = 2.0; s <= BoundFns::kFMax; s += step) {
        double f = B.f(s), F = B.F(s);
        if (!(f <= F) || f < -1e-12) {
            std::ostringstream o;
            o << "f > F at s=" << s;
            return o.str();
        }
    }
    return "";
}

std::string check_vec_oracle(Ctx& c) {
    const int rounds = c.quick ? 20 : 100;
    std::uniform_real_distribution<double> U(2.0, 10.0);
    for (int r = 0; r < rounds; ++r) {
        double s1 = U(c.rng), s2 = U(c.rng);
        double a = F_vec(s1, s2), b = F_vec_grid(s1, s2, 1e-4);
        double e = 0, g = 0;
        if (2 / s1 + 2 / s2 <= 1) {  // lower line needs s1, s2 >= 2
            e = f_vec(s1, s2);
            g = f_vec_grid(s1, s2, 1e-4);
        }
        if (std::fabs(a - b) > 1e-6 || std::fabs(e - g) > 1e-6) {
            std::ostringstream o;
            o << "optimizer off grid oracle at (" << s1 << ", " << s2 << "): " << a - b << ", " << e - g;
            return o.str();
        }
    }
    return "";
}

std::string check_gl2(Ctx&) {
    for (u64 n : {3, 5, 7, 9, 25})
        if (gl2_order(n) != gl2_order_enumerate(n)) return "gl2 order mismatch n=" + std::to_string(n);
    for (unsigned l : {3u, 5u, 7u})
        for (u64 q : {3, 5, 7, 11, 13}) {
            if ((q * q - 1) % l != 0 && q != l) continue;
            CqCount k = count_Cq(l, q);
            if (k.brute != k.formula || k.brute != k.by_classes)
                return "C_q mismatch ell=" + std::to_string(l) + " q=" + std::to_string(q);
        }
    return "";
}

std::string check_pi_count(Ctx& c) {
    const u64 y = c.quick ? 1000 : 100000;
    PiCount r = pi_prime_count(3, SquareFreeIdeal(), GaussInt(1, 0), y);
    u64 split = 0;
    for (u64 p : primes_upto((std::uint32_t)y)) split += p % 4 == 1;
    if (r.count != 2 * split) return "primary count " + std::to_string(r.count) + " != " + std::to_string(2 * split);
    return "";
}

const std::vector<std::pair<std::string, Fn>>& checks() {
    static const std::vector<std::pair<std::string, Fn>> v = {
        {"gaussian.split_prime", check_split_prime},
        {"kernels.simd_equivalence", check_simd},
        {"curve.order_vs_brute", check_orders},
        {"curve.cyclotomic_product", check_cyclotomic},
        {"curve.structure_invariants", check_structure},
        {"census.coprimality", check_coprimality},
        {"census.common_factor_witness", check_witness},
        {"census.pi_prime_count", check_pi_count},
        {"sieve.mobius_pair_inversion", check_mobius_pair},
        {"sieve.h_condition", check_h_condition},
        {"sieve.f_le_F", check_f_le_F},
        {"sieve.vector_optimizer_oracle", check_vec_oracle},
        {"gl2.class_counts", check_gl2},
    };
    return v;
}

}  // namespace

std::vector<std::string> verify_check_names() {
    std::vector<std::string> out;
    for (const auto& [n, f] : checks()) out.push_back(n);
    return out;
}

std::vector<CheckResult> run_verify(const VerifyOptions& opt) {
    Ctx ctx{opt.quick, std::mt19937_64(opt.seed)};
    std::vector<CheckResult> out;
    for (const auto& [name, fn] : checks()) {
        CheckResult r;
        r.name = name;
        auto t0 = std::chrono::steady_clock::now();
        try {
            r.detail = fn(ctx);
            r.pass = r.detail.empty();
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (opt.progress) opt.progress(r);
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace cmsieve
