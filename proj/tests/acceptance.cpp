// One PASS/FAIL line per acceptance criterion.  Exit status is nonzero when any
// criterion fails.

#include "cmsieve/census.hpp"
#include "cmsieve/curve_orders.hpp"
#include "cmsieve/gl2.hpp"
#include "cmsieve/sieve_numerics.hpp"
#include "cmsieve/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <unistd.h>

using namespace cmsieve;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double now() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

int failures = 0;

void report(int id, const std::function<Outcome()>& fn) {
    double t0 = now();
    Outcome o;
    try {
        o = fn();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %2d: %s  %s  [%.1f s]\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str(), now() - t0);
    std::fflush(stdout);
    failures += !o.pass;
}

std::string fmt(const char* f, double a) {
    char b[128];
    std::snprintf(b, sizeof b, f, a);
    return b;
}

bool odd_squarefree(const BigInt& n) {
    if (n % 2 == 0) return false;
    return n == 1 || squarefree(factor(n));
}

}  // namespace

int main() {
    // 1
    report(1, [] {
        SieveParams sp;
        sp.alpha = 1 / 4.01;
        sp.theta1 = 1 / 30.0;
        sp.theta2 = 1 / 31.0;
        sp.delta1 = 1 / 4.2;
        sp.delta2 = 1 / 4.3;
        sp.lambda = 1 / 2.4;
        double t0 = now();
        HParts h = H_parts(sp);
        double dt = now() - t0;
        std::ostringstream o;
        o << "H=" << h.value << " (f_vec " << h.fvec << ", I1 " << h.I1 << ", I2 " << h.I2 << "), target 0.1274+-0.0005, "
          << dt << " s";
        return Outcome{std::fabs(h.value - 0.1274) <= 5e-4 && dt < 10, o.str()};
    });

    // 2
    report(2, [] {
        double g = G_weighted(1 / 15.0, 1 / 4.1, 1 / 1.3, 1 / 4.01);
        return Outcome{std::fabs(g - 0.1341) <= 5e-4, fmt("G=%.6f, target 0.1341+-0.0005", g)};
    });

    // 3
    report(3, [] {
        double a1 = G_weighted(1 / 20.0, 1 / 5.1, 1 / 1.2, 1 / 5.0), a2 = G_weighted(1 / 20.0, 1 / 5.1, 1 / 1.2, 1 / 5.01);
        double b1 = G_weighted(1 / 20.0, 1 / 8.1, 2.0, 1 / 5.0), b2 = G_weighted(1 / 20.0, 1 / 8.1, 2.0, 1 / 5.01);
        bool pa = std::fabs(a1 - 0.0818) <= 5e-3 || std::fabs(a2 - 0.0818) <= 5e-3;
        bool pb = std::fabs(b1 - 0.1114) <= 5e-3 || std::fabs(b2 - 0.1114) <= 5e-3;
        char buf[256];
        std::snprintf(buf, sizeof buf, "omega: %.6f (1/5), %.6f (1/5.01) vs 0.0818; Omega: %.6f (1/5), %.6f (1/5.01) vs 0.1114",
                      a1, a2, b1, b2);
        return Outcome{pa && pb, buf};
    });

    // 4
    report(4, [] {
        struct Want {
            BoundCase c;
            unsigned ell;
            long v;
            const char* name;
        } want[] = {{BoundCase::CMEll, 3, 9, "cm-ell/3"},         {BoundCase::CMEll, 5, 17, "cm-ell/5"},
                    {BoundCase::CMPair, 0, 10, "cm-pair"},         {BoundCase::CMP5, 0, 5, "cm-p5"},
                    {BoundCase::NonCMOmega, 3, 11, "noncm-omega/3"}, {BoundCase::NonCMBigOmega, 3, 16, "noncm-Omega/3"}};
        bool ok = true;
        std::ostringstream o;
        for (const auto& w : want) {
            BoundResult r = evaluate_bound(w.c, w.ell, default_params(w.c, w.ell));
            long got = -1;
            std::string note;
            try {
                got = bound_table(w.c, w.ell);
            } catch (const std::exception& e) {
                note = " (not certified)";
            }
            ok &= got == w.v;
            o << w.name << "=" << (got < 0 ? std::string("-") : std::to_string(got)) << note << " value " << r.value
              << " want " << w.v << "; ";
        }
        return Outcome{ok, o.str()};
    });

    // 5
    report(5, [] {
        double t0 = now();
        bool ok = true;
        int n = 0;
        std::ostringstream o;
        for (unsigned l : {3u, 5u, 7u})
            for (u64 q : {3, 5, 7, 11, 13}) {
                if ((q * q - 1) % l != 0 && q != l) continue;
                CqCount k = count_Cq(l, q);
                ++n;
                if (k.brute != k.formula) {
                    ok = false;
                    o << "mismatch (" << l << "," << q << ") ";
                }
            }
        double dt = now() - t0;
        o << n << " pairs, " << dt << " s";
        return Outcome{ok && dt < 60, o.str()};
    });

    // 6
    report(6, [] {
        u64 bad = 0, checked = 0;
        for (std::uint32_t p : primes_upto(10000)) {
            if (p == 2) continue;
            for (unsigned n = 1; n <= 2; ++n) {
                ++checked;
                bad += order_pn(p, n) != BigInt((unsigned long)brute_force_count(p, n));
            }
        }
        u64 cyc_bad = 0, cyc_primes = 0;
        for (std::uint32_t p : primes_upto(1000000)) {
            if (p % 4 != 1) continue;
            ++cyc_primes;
            i64 a = frobenius(p).a_p;
            std::vector<BigInt> phi(13);
            for (unsigned d = 1; d <= 12; ++d) phi[d] = cyclotomic_norm_from_trace(a, p, d);
            for (unsigned n = 1; n <= 12; ++n) {
                BigInt prod = 1;
                for (u64 d : divisors(n)) prod *= phi[d];
                cyc_bad += prod != order_from_trace(a, p, n);
            }
        }
        std::ostringstream o;
        o << checked << " (p,n) orders vs enumeration, " << bad << " mismatches; cyclotomic identity over " << cyc_primes
          << " split p, " << cyc_bad << " failures";
        return Outcome{bad == 0 && cyc_bad == 0, o.str()};
    });

    // 7
    report(7, [] {
        u64 n = 0, bad = 0;
        for (std::uint32_t p : primes_upto(1000000))
            if (p % 4 == 1) {
                ++n;
                bad += !verify_coprimality(p);
            }
        return Outcome{bad == 0, std::to_string(n) + " split primes, " + std::to_string(bad) + " failures"};
    });

    // 8 and 9 share a census cache
    fs::path dir = fs::temp_directory_path() / ("cmsieve-acceptance-" + std::to_string(::getpid()));
    fs::create_directories(dir);
    std::map<u64, CensusTable> tables;
    auto census = [&](u64 x) -> const CensusTable& {
        auto it = tables.find(x);
        if (it != tables.end()) return it->second;
        CensusConfig cfg;
        cfg.x = x;
        cfg.cache_path = (dir / "orders.csv").string();
        return tables[x] = run_census(cfg);
    };

    report(8, [&] {
        const CensusTable& t = census(10000);
        u64 n1 = 0, n2 = 0, exc = 0;
        for (const auto& r : t.rows) {
            if (r.rec.p > 3000) break;
            if (!r.struct_checked) {
                ++exc;
                continue;
            }
            if (odd_squarefree(r.rec.A1)) {
                ++n1;
                exc += !(r.s1.d == 2 && BigInt((unsigned long)r.s1.e) == 4 * r.rec.A1);
            }
            BigInt m = r.rec.A1 * r.rec.A2;
            if (odd_squarefree(m)) {
                ++n2;
                exc += !(r.s2.d == 4 && BigInt((unsigned long)r.s2.e) == 8 * m);
            }
        }
        std::ostringstream o;
        o << n1 << " primes with A1 odd square-free, " << n2 << " with A1*A2 odd square-free, " << exc << " exceptions";
        return Outcome{exc == 0 && n1 > 0 && n2 > 0, o.str()};
    });

    report(9, [&] {
        const char* keys[] = {"T1.2-omega", "T1.2-P5", "T1.3-pair", "T1.3-P10", "T1.5-cyclic"};
        bool ok = true;
        std::ostringstream o;
        u64 xs[] = {10000, 100000, 1000000};
        for (const char* k : keys) {
            o << k << ":";
            u64 prev = 0;
            for (u64 x : xs) {
                u64 c = census(x).counters.at(k);
                o << " " << c;
                ok &= c >= prev;
                if (x == 100000) ok &= c > 0;
                prev = c;
            }
            o << "; ";
        }
        return Outcome{ok, o.str()};
    });
    fs::remove_all(dir);

    // 10
    report(10, [] {
        ChebotarevResult r = chebotarev_census(1, 1, 3, 7, 10000);
        double want = 602.0 / 2016;
        char buf[200];
        std::snprintf(buf, sizeof buf, "empirical %.6f vs %.6f, pointwise agreement %llu/%llu", r.empirical, want,
                      (unsigned long long)r.pointwise_agree, (unsigned long long)r.primes);
        return Outcome{std::fabs(r.empirical - want) <= 0.05 && r.pointwise_agree == r.primes && r.primes > 0, buf};
    });

    // 11
    report(11, [] {
        PiCount c = pi_prime_count(3, SquareFreeIdeal(), GaussInt(1, 0), 1000000);
        double l = li(1e6), rel = (double)c.count / l - 1;
        char buf[200];
        std::snprintf(buf, sizeof buf, "count %llu, li(1e6) %.1f, relative %.4f", (unsigned long long)c.count, l, rel);
        return Outcome{std::fabs(rel) <= 0.02, buf};
    });

    // 12
    report(12, [] {
        VerifyOptions opt;
        opt.quick = false;
        auto res = run_verify(opt);
        const char* need[] = {"sieve.mobius_pair_inversion", "sieve.h_condition", "sieve.f_le_F",
                              "sieve.vector_optimizer_oracle"};
        bool ok = true;
        std::ostringstream o;
        for (const auto& r : res) {
            bool required = false;
            for (const char* n : need) required |= r.name == n;
            if (!r.pass) {
                ok = false;
                o << r.name << " failed (" << r.detail << "); ";
            } else if (required) {
                o << r.name << " ok; ";
            }
        }
        o << res.size() << " checks in the full suite";
        return Outcome{ok, o.str()};
    });

    std::printf("%d of 12 criteria failed\n", failures);
    return failures ? 1 : 0;
}
