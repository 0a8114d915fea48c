#include "cmsieve/gl2.hpp"

#include "cmsieve/curve_orders.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cmsieve {

namespace {

// n = q or q^2; returns q, or 0 when unsupported.
u64 base_prime(u64 n) {
    if (n >= 2 && is_prime_u64(n)) return n;
    u64 r = (u64)std::llround(std::sqrt((double)n));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    if (r * r == n && is_prime_u64(r)) return r;
    return 0;
}

bool unit(u64 x, u64 q) { return x % q != 0; }

u64 index_of(u64 a, u64 b, u64 c, u64 d, u64 n) { return ((a * n + b) * n + c) * n + d; }

Mat2 from_index(u64 i, u64 n) {
    Mat2 m;
    m.n = n;
    m.d = i % n;
    i /= n;
    m.c = i % n;
    i /= n;
    m.b = i % n;
    m.a = i / n;
    return m;
}

Mat2 mul(const Mat2& x, const Mat2& y) {
    u64 n = x.n;
    return {(x.a * y.a + x.b * y.c) % n, (x.a * y.b + x.b * y.d) % n, (x.c * y.a + x.d * y.c) % n,
            (x.c * y.b + x.d * y.d) % n, n};
}

Mat2 inverse(const Mat2& m) {
    u64 n = m.n;
    u64 di = invmod(m.det(), n);
    return {mulmod(m.d, di, n), mulmod(n - m.b % n, di, n) % n, mulmod(n - m.c % n, di, n) % n, mulmod(m.a, di, n), n};
}

u64 primitive_root(u64 n, u64 q) {
    u64 phi = euler_phi(n);
    auto fs = factor_u64(phi);
    for (u64 g = 2; g < n; ++g) {
        if (g % q == 0) continue;
        bool ok = true;
        for (auto [r, e] : fs)
            if (powmod(g, phi / r, n) == 1) ok = false;
        if (ok) return g;
    }
    return 1;  // n = 2
}

struct DSU {
    std::vector<std::uint32_t> parent;
    explicit DSU(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

}  // namespace

u64 gl2_order(u64 n) {
    u64 q = base_prime(n);
    if (q == 0) throw std::domain_error("gl2_order: n must be a prime or a prime square");
    u64 base = (q + 1) * q * (q - 1) * (q - 1);
    return n == q ? base : base * q * q * q * q;
}

u64 gl2_order_enumerate(u64 n) {
    u64 q = base_prime(n);
    if (q == 0) throw std::domain_error("gl2_order: n must be a prime or a prime square");
    if (n > 49) throw std::domain_error("modulus too large for enumeration");
    u64 cnt = 0;
    for (u64 a = 0; a < n; ++a)
        for (u64 b = 0; b < n; ++b)
            for (u64 c = 0; c < n; ++c)
                for (u64 d = 0; d < n; ++d)
                    if (unit((a * d + n * n - b * c) % n, q)) ++cnt;
    return cnt;
}

std::vector<ConjClass> conjugacy_classes(u64 n) {
    u64 q = base_prime(n);
    if (q == 0) throw std::domain_error("conjugacy_classes: n must be a prime or a prime square");
    if (n > 49) throw std::domain_error("modulus too large for enumeration");
    const u64 total = n * n * n * n;
    DSU dsu(total);
    // SL2 is generated by the two elementary matrices; diag(g, 1) adds the determinant.
    std::vector<Mat2> gens{{1, 1, 0, 1, n}, {1, 0, 1, 1, n}, {primitive_root(n, q) % n, 0, 0, 1, n}};
    std::vector<Mat2> ginv;
    for (const auto& g : gens) ginv.push_back(inverse(g));
    std::vector<bool> inv(total, false);
    for (u64 i = 0; i < total; ++i) {
        Mat2 m = from_index(i, n);
        if (!unit(m.det(), q)) continue;
        inv[i] = true;
        for (size_t k = 0; k < gens.size(); ++k) {
            Mat2 c = mul(mul(gens[k], m), ginv[k]);
            dsu.unite((std::uint32_t)i, (std::uint32_t)index_of(c.a, c.b, c.c, c.d, n));
        }
    }
    std::map<std::uint32_t, u64> sizes;
    for (u64 i = 0; i < total; ++i)
        if (inv[i]) ++sizes[dsu.find((std::uint32_t)i)];
    std::vector<ConjClass> out;
    for (auto [root, sz] : sizes) out.push_back({from_index(root, n), sz});
    return out;
}

// ---------------------------------------------------------------------------

Fq2::Fq2(u64 q_) : q(q_) {
    if (!is_prime_u64(q)) throw std::domain_error("Fq2: q must be prime");
    if (q == 2) {
        c0 = 1;
        c1 = 1;  // t^2 = t + 1
    } else {
        c0 = 2;
        while (legendre((i64)c0, q) != -1) ++c0;
    }
}

Fq2::El Fq2::mul(El x, El y) const {
    u64 ac = x.first * y.first % q, bd = x.second * y.second % q;
    u64 cross = (x.first * y.second + x.second * y.first) % q;
    return {(ac + bd * c0) % q, (cross + bd * c1) % q};
}

std::vector<Fq2::El> cyclotomic_roots(unsigned ell, u64 q) {
    Fq2 F(q);
    std::vector<u64> coef;
    for (const BigInt& c : cyclotomic_poly(ell)) {
        BigInt r = c % BigInt((unsigned long)q);
        if (r < 0) r += (unsigned long)q;
        coef.push_back(r.get_ui());
    }
    std::vector<Fq2::El> roots;
    for (u64 x = 0; x < q; ++x)
        for (u64 y = 0; y < q; ++y) {
            Fq2::El e{x, y}, acc{0, 0};
            for (size_t i = coef.size(); i-- > 0;) acc = F.add(F.mul(acc, e), {coef[i], 0});
            if (F.is_zero(acc)) roots.push_back(e);
        }
    return roots;
}

std::set<std::pair<u64, u64>> Cq_trace_det(unsigned ell, u64 q) {
    Fq2 F(q);
    auto roots = cyclotomic_roots(ell, q);
    std::set<std::pair<u64, u64>> s;
    for (u64 t = 0; t < q; ++t)
        for (u64 D = 1; D < q; ++D)
            for (const auto& e : roots) {
                // e^2 - t e + D
                Fq2::El v = F.add(F.mul(e, e), F.add(F.mul({(q - t) % q, 0}, e), {D, 0}));
                if (F.is_zero(v)) {
                    s.insert({t, D});
                    break;
                }
            }
    return s;
}

u64 Cq_formula(unsigned ell, u64 q) {
    u64 L = ell;
    if (q == L) return q * (q * q - 2);
    if ((q - 1) % L == 0)
        return ((L - 1) * (q - L) + (L - 1) * (L - 2) / 2) * (q + 1) * q + (L - 1) + (L - 1) * (q + 1) * (q - 1);
    if ((q + 1) % L == 0) return (L - 1) / 2 * q * (q - 1);
    return 0;
}

CqCount count_Cq(unsigned ell, u64 q) {
    if (ell < 3 || !is_prime_u64(ell)) throw std::domain_error("ell must be an odd prime");
    if (!is_prime_u64(q)) throw std::domain_error("q must be prime");
    if (q > 49) throw std::domain_error("modulus too large for enumeration");
    auto td = Cq_trace_det(ell, q);
    CqCount r;
    for (u64 a = 0; a < q; ++a)
        for (u64 b = 0; b < q; ++b)
            for (u64 c = 0; c < q; ++c)
                for (u64 d = 0; d < q; ++d) {
                    Mat2 m{a, b, c, d, q};
                    u64 D = m.det();
                    if (D == 0) continue;
                    if (td.count({m.tr(), D})) ++r.brute;
                }
    for (const auto& cl : conjugacy_classes(q))
        if (td.count({cl.rep.tr(), cl.rep.det()})) r.by_classes += cl.size;
    r.formula = Cq_formula(ell, q);
    return r;
}

ConjClassTable conj_class_table(unsigned ell, u64 q) {
    ConjClassTable t;
    t.n = q;
    t.ell = ell;
    t.group_order = gl2_order(q);
    t.classes = conjugacy_classes(q);
    t.C_count = count_Cq(ell, q).brute;
    t.density = Rational((unsigned long)t.C_count, (unsigned long)t.group_order);
    t.density.canonicalize();
    return t;
}

Cq2Count count_Cq2(unsigned ell, u64 q) {
    if (ell < 3 || !is_prime_u64(ell)) throw std::domain_error("ell must be an odd prime");
    if (!is_prime_u64(q)) throw std::domain_error("q must be prime");
    Cq2Count r;
    if (q == ell || (q * q - 1) % ell != 0) return r;
    if (q > 7) throw std::domain_error("q too large for enumeration");
    const u64 n = q * q;
    Fq2 F(q);
    auto roots = cyclotomic_roots(ell, q);
    // C1: (tr, det) mod q equal to (e_i + e_j, e_i e_j) for roots e_i, e_j
    std::set<std::pair<u64, u64>> c1;
    for (const auto& ei : roots)
        for (const auto& ej : roots) {
            auto s = F.add(ei, ej), p = F.mul(ei, ej);
            if (s.second == 0 && p.second == 0) c1.insert({s.first, p.first});
        }
    // C2: Hensel lifts of the roots in F_q to Z/q^2
    std::vector<u64> lifts;
    if ((q - 1) % ell == 0) {
        std::vector<BigInt> phi = cyclotomic_poly(ell);
        auto eval = [&](u64 x, bool deriv) {
            BigInt acc = 0;
            for (size_t i = phi.size(); i-- > 0;) {
                if (deriv && i == 0) break;
                BigInt c = deriv ? phi[i] * (unsigned long)i : phi[i];
                acc = acc * (unsigned long)x + c;
            }
            BigInt m = acc % BigInt((unsigned long)n);
            if (m < 0) m += (unsigned long)n;
            return m.get_ui();
        };
        for (const auto& e : roots) {
            if (e.second != 0) continue;
            u64 x = e.first;
            u64 fx = eval(x, false), dfx = eval(x, true);
            u64 t = mulmod(fx, invmod(dfx % n, n), n);
            lifts.push_back((x + n - t) % n);
        }
    }
    for (u64 a = 0; a < n; ++a)
        for (u64 b = 0; b < n; ++b)
            for (u64 c = 0; c < n; ++c)
                for (u64 d = 0; d < n; ++d) {
                    Mat2 m{a, b, c, d, n};
                    u64 D = m.det(), T = m.tr();
                    if (D % q == 0) continue;
                    bool in = c1.count({T % q, D % q}) > 0;
                    for (size_t k = 0; !in && k < lifts.size(); ++k) {
                        u64 e = lifts[k];
                        u64 v = (mulmod(e, e, n) + n - mulmod(T, e, n) + D) % n;
                        in = v == 0;
                    }
                    if (in) {
                        ++r.count;
                        r.trace_det.insert({T, D});
                    }
                }
    r.K = (double)r.count / std::pow((double)q, 6);
    return r;
}

Rational g_nonCM(unsigned ell, u64 q, const Rational& i_q, bool q_divides_ME) {
    if (ell < 3 || !is_prime_u64(ell) || !is_prime_u64(q)) throw std::domain_error("ell and q must be prime, ell odd");
    if (q_divides_ME) return 0;
    Rational L = (unsigned long)ell, Q = (unsigned long)q, phi = (unsigned long)(ell - 1);
    Rational r = 0;
    if (q == ell) {
        r = (L * L - 2) / ((L + 1) * (L - 1) * (L - 1));
    } else if (q % ell == 1) {
        Rational num = Q * Q - (L / 2 - 1) * Q - (L / 2 + 1);
        r = phi * num / ((Q + 1) * (Q - 1) * (Q - 1));
    } else if ((q + 1) % ell == 0) {
        r = i_q * phi / (2 * (Q * Q - 1));
    }
    r.canonicalize();
    return r;
}

CEResult c_E_compute(u64 me, unsigned ell, const std::map<u64, Rational>& i_config) {
    if (me == 0 || !is_squarefree_u64(me)) throw std::domain_error("M_E must be square-free");
    CEResult out;
    out.exact = 0;
    for (u64 d : divisors(me)) {
        Rational term = moebius(d);
        for (auto [q, e] : factor_u64(d)) {
            auto it = i_config.find(q);
            Rational iq = it == i_config.end() ? Rational(1) : it->second;
            term *= g_nonCM(ell, q, iq, false);
        }
        out.exact += term;
    }
    out.exact.canonicalize();
    out.value = out.exact.get_d();
    return out;
}

ChebotarevResult chebotarev_census(i64 A, i64 B, unsigned ell, u64 q, u64 x) {
    BigInt disc = BigInt(4) * BigInt((long)A) * BigInt((long)A) * BigInt((long)A) + BigInt(27) * BigInt((long)B) * BigInt((long)B);
    if (disc == 0) throw std::domain_error("singular curve");
    if (ell < 3 || !is_prime_u64(ell) || !is_prime_u64(q)) throw std::domain_error("ell and q must be prime, ell odd");
    BigInt bad = disc * 6;
    if (mpz_divisible_ui_p(bad.get_mpz_t(), (unsigned long)q)) throw std::domain_error("q must not divide 6 disc");

    auto td = Cq_trace_det(ell, q);
    std::set<std::pair<u64, u64>> td2;
    const bool check2 = q <= 7 && q != ell && (q * q - 1) % ell == 0;
    if (check2) td2 = count_Cq2(ell, q).trace_det;
    const u64 q2 = q * q;
    const bool inert_needed = q != ell && (q + 1) % ell == 0;

    ChebotarevResult r;
    for (std::uint32_t p : primes_upto((std::uint32_t)x)) {
        if (p < 5 || p == q || mpz_divisible_ui_p(disc.get_mpz_t(), p)) continue;
        i64 a = trace_by_charsum(A, B, p);
        BigInt Al = cyclotomic_norm_from_trace(a, p, ell);
        bool lhs = mpz_divisible_ui_p(Al.get_mpz_t(), (unsigned long)q) != 0;
        u64 am = (u64)mod_floor(a, (i64)q), pm = p % q;
        bool inC = td.count({am, pm}) > 0;
        bool rhs = inC;
        if (inert_needed) {
            i64 delta = a * a - 4 * (i64)p;
            rhs = inC && legendre(mod_floor(delta, (i64)q), q) == -1;
        }
        ++r.primes;
        if (lhs) ++r.divisible;
        if (inC) ++r.in_Cq;
        if (lhs == rhs) ++r.pointwise_agree;
        if (check2 && mpz_divisible_ui_p(Al.get_mpz_t(), (unsigned long)q2)) {
            ++r.square_checked;
            if (td2.count({(u64)mod_floor(a, (i64)q2), p % q2})) ++r.square_in_Cq2;
        }
    }
    if (r.primes) {
        r.empirical = (double)r.divisible / (double)r.primes;
        r.sigma_share = (double)r.in_Cq / (double)r.primes;
    }
    if (r.in_Cq) r.i_q_empirical = (double)r.divisible / (double)r.in_Cq;
    r.predicted = (double)Cq_formula(ell, q) / (double)gl2_order(q);
    return r;
}

}  // namespace cmsieve
