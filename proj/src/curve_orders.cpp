#include "cmsieve/curve_orders.hpp"

#include "cmsieve/kernels.hpp"

#include <stdexcept>

namespace cmsieve {

FrobeniusData frobenius(u64 p) {
    if (p == 2) throw std::domain_error("bad reduction");
    if (!is_prime_u64(p)) throw std::domain_error("frobenius: p is not prime");
    FrobeniusData fd;
    fd.p = p;
    if (p % 4 == 1) {
        fd.pi = split_prime(p);
        fd.a_p = 2 * fd.pi.re.get_si();
    } else {
        fd.supersingular = true;
        fd.a_p = 0;
    }
    return fd;
}

BigInt lucas_trace(i64 a, u64 p, unsigned n) {
    BigInt s0 = 2, s1 = (long)a;
    if (n == 0) return s0;
    BigInt P = (unsigned long)p;
    for (unsigned k = 2; k <= n; ++k) {
        BigInt s2 = BigInt((long)a) * s1 - P * s0;
        s0 = s1;
        s1 = s2;
    }
    return s1;
}

BigInt order_from_trace(i64 a, u64 p, unsigned n) {
    if (n < 1) throw std::domain_error("order: n must be >= 1");
    BigInt q;
    mpz_ui_pow_ui(q.get_mpz_t(), p, n);
    return q + 1 - lucas_trace(a, p, n);
}

BigInt cyclotomic_norm_from_trace(i64 a, u64 p, unsigned d) {
    BigInt num = 1, den = 1;
    for (u64 k : divisors(d)) {
        int m = moebius(d / k);
        if (m == 1) num *= order_from_trace(a, p, (unsigned)k);
        else if (m == -1) den *= order_from_trace(a, p, (unsigned)k);
    }
    if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t())) throw std::logic_error("cyclotomic quotient not exact");
    return num / den;
}

BigInt order_pn(u64 p, unsigned n) {
    if (n < 1) throw std::domain_error("order_pn: n must be >= 1");
    FrobeniusData fd = frobenius(p);
    if (fd.supersingular) return order_from_trace(0, p, n);
    return (pow(fd.pi, n) - GaussInt(1, 0)).norm();
}

std::vector<BigInt> cyclotomic_poly(unsigned d) {
    if (d == 0) throw std::domain_error("cyclotomic_poly: d must be >= 1");
    // x^d - 1 divided by Phi_k for every proper divisor k
    std::vector<BigInt> num(d + 1, 0);
    num[0] = -1;
    num[d] = 1;
    for (u64 k : divisors(d)) {
        if (k == d) continue;
        std::vector<BigInt> den = cyclotomic_poly((unsigned)k);
        size_t dn = num.size() - 1, dd = den.size() - 1;
        std::vector<BigInt> q(dn - dd + 1, 0);
        for (size_t i = dn + 1; i-- > dd;) {
            BigInt c = num[i];  // den is monic
            q[i - dd] = c;
            for (size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
        }
        num = q;
    }
    return num;
}

BigInt cyclotomic_factor(u64 p, unsigned d) {
    FrobeniusData fd = frobenius(p);
    if (fd.supersingular) throw std::domain_error("split primes only");
    std::vector<BigInt> c = cyclotomic_poly(d);
    GaussInt acc(0, 0);
    for (size_t i = c.size(); i-- > 0;) acc = acc * fd.pi + GaussInt(c[i], 0);
    return acc.norm();
}

// ---------------------------------------------------------------------------
// F_p and F_{p^2} = F_p[t]/(t^2 - r)

namespace {

struct Field {
    std::uint32_t p = 0, r = 0;
    bool ext = false;
    u64 m = 0;  // floor((2^64 - 1) / p)

    Field(std::uint32_t p_, unsigned n) : p(p_), ext(n == 2) {
        m = ~u64(0) / p;
        if (ext) {
            r = 2;
            while (legendre(r, p) != -1) ++r;
        }
    }
    // Barrett reduction of a 64-bit value
    std::uint32_t red(u64 x) const {
        u64 q = (u64)(((u128)x * m) >> 64);
        u64 t = x - q * p;
        while (t >= p) t -= p;
        return (std::uint32_t)t;
    }
    std::uint32_t mul1(std::uint32_t a, std::uint32_t b) const { return red((u64)a * b); }
    std::uint32_t add1(std::uint32_t a, std::uint32_t b) const { std::uint32_t s = a + b; return s >= p ? s - p : s; }
    std::uint32_t sub1(std::uint32_t a, std::uint32_t b) const { return a >= b ? a - b : a + p - b; }
};

struct El {
    std::uint32_t a = 0, b = 0;
};

inline El fadd(const Field& F, El x, El y) { return {F.add1(x.a, y.a), F.add1(x.b, y.b)}; }
inline El fsub(const Field& F, El x, El y) { return {F.sub1(x.a, y.a), F.sub1(x.b, y.b)}; }
inline El fmul(const Field& F, El x, El y) {
    if (!F.ext) return {F.mul1(x.a, y.a), 0};
    // p^2 fits in 32 bits here, so one reduction per component suffices
    u64 ac = (u64)x.a * y.a, bd = (u64)x.b * y.b;
    u64 ad = (u64)x.a * y.b, bc = (u64)x.b * y.a;
    return {F.red(ac + (u64)F.r * bd), F.red(ad + bc)};
}
inline bool fzero(El x) { return x.a == 0 && x.b == 0; }
inline bool feq(El x, El y) { return x.a == y.a && x.b == y.b; }
inline std::uint32_t fnorm(const Field& F, El x) {
    if (!F.ext) return x.a;
    return F.sub1(F.mul1(x.a, x.a), F.red((u64)F.r * F.mul1(x.b, x.b)));
}

// f(x) = x^3 - x
inline El curve_rhs(const Field& F, El x) { return fsub(F, fmul(F, fmul(F, x, x), x), x); }

// x-only projective arithmetic on y^2 = x^3 - x; Z = 0 is the point at infinity.
struct XZ {
    El X, Z;
};
const XZ kInf{{1, 0}, {0, 0}};

inline XZ xdbl(const Field& F, XZ P) {
    El X2 = fmul(F, P.X, P.X), Z2 = fmul(F, P.Z, P.Z);
    El s = fadd(F, X2, Z2);
    El Xn = fmul(F, s, s);
    El xz = fmul(F, P.X, P.Z);
    El four_xz = fadd(F, fadd(F, xz, xz), fadd(F, xz, xz));
    El Zn = fmul(F, four_xz, fsub(F, X2, Z2));
    if (fzero(Zn)) return kInf;
    return {Xn, Zn};
}

// P + Q given D = P - Q
inline XZ xadd(const Field& F, XZ P, XZ Q, XZ D) {
    El u = fadd(F, fmul(F, P.X, Q.X), fmul(F, P.Z, Q.Z));
    El v = fsub(F, fmul(F, P.X, Q.Z), fmul(F, Q.X, P.Z));
    El Xn = fmul(F, D.Z, fmul(F, u, u));
    El Zn = fmul(F, D.X, fmul(F, v, v));
    if (fzero(Zn)) return kInf;
    return {Xn, Zn};
}

XZ xmul(const Field& F, XZ B, u64 m) {
    if (m == 1) return B;
    XZ R0 = B, R1 = xdbl(F, B);
    int top = 63 - __builtin_clzll(m);
    for (int i = top - 1; i >= 0; --i) {
        if ((m >> i) & 1) {
            R0 = xadd(F, R0, R1, B);
            R1 = xdbl(F, R1);
        } else {
            R1 = xadd(F, R0, R1, B);
            R0 = xdbl(F, R0);
        }
    }
    return R0;
}

inline bool is_two_torsion(const Field& F, XZ P) {
    // x in {0, 1, -1}
    return fzero(P.X) || feq(P.X, P.Z) || fzero(fadd(F, P.X, P.Z));
}

}  // namespace

static void check_bound(u64 p, unsigned n, u64 bound) {
    if (n != 1 && n != 2) throw std::domain_error("only n = 1 or 2 supported");
    if (p == 2 || !is_prime_u64(p)) throw std::domain_error("odd prime required");
    u128 q = n == 1 ? (u128)p : (u128)p * p;
    if (q > bound) throw std::domain_error("enumeration bound exceeded");
}

static i64 charsum_cubic(i64 A, i64 B, u64 p) {
    // sum over x in F_p of chi(x^3 + A x + B)
    auto P = [&](u64 u) {
        i64 v = (i64)((u128)u * u % p * u % p) + mod_floor(A, (i64)p) * (i64)u % (i64)p + mod_floor(B, (i64)p);
        return (std::uint32_t)(v % (i64)p);
    };
    if (p < (1u << 24)) {
        auto chi = kernels::quadratic_character_table((std::uint32_t)p);
        std::uint32_t vals[kernels::kDiffs], d[kernels::kDiffs];
        for (int i = 0; i < kernels::kDiffs; ++i) vals[i] = P(i);
        kernels::diff_table(vals, (std::uint32_t)p, d);
        std::int64_t s = 0;
        kernels::charsum(chi.data(), (std::uint32_t)p, d, 1, (std::uint32_t)p, &s);
        return s;
    }
    i64 s = 0;
    for (u64 u = 0; u < p; ++u) s += legendre(P(u), p);
    return s;
}

u64 brute_force_count(u64 p, unsigned n, u64 bound) {
    check_bound(p, n, bound);
    if (n == 1) return (u64)((i64)p + 1 + charsum_cubic(-1, 0, p));

    // Over F_{p^2} the quadratic character is chi_p(N(z)).  N(f(u+vt)) is a
    // degree-6 polynomial in u for fixed v; it is invariant under v -> -v
    // (conjugation) and under u -> -u (f is odd), so a quarter of the plane is
    // stepped and reweighted.
    const std::uint32_t pp = (std::uint32_t)p;
    Field F(pp, 2);
    auto chi = kernels::quadratic_character_table(pp);
    const std::uint32_t half = (pp - 1) / 2;
    const std::size_t lanes = half + 1;
    std::vector<std::uint32_t> diffs(lanes * kernels::kDiffs);
    std::vector<std::int64_t> sums(lanes);
    std::vector<std::int64_t> at_zero(lanes);
    for (std::uint32_t v = 0; v <= half; ++v) {
        std::uint32_t vals[kernels::kDiffs];
        for (std::uint32_t i = 0; i < (std::uint32_t)kernels::kDiffs; ++i)
            vals[i] = fnorm(F, curve_rhs(F, El{(1 + i) % pp, v}));
        kernels::diff_table(vals, pp, &diffs[v * kernels::kDiffs]);
        at_zero[v] = chi[fnorm(F, curve_rhs(F, El{0, v}))];
    }
    kernels::charsum(chi.data(), pp, diffs.data(), lanes, half, sums.data());
    i64 S = 0;
    for (std::uint32_t v = 0; v <= half; ++v) {
        i64 row = at_zero[v] + 2 * sums[v];
        S += v == 0 ? row : 2 * row;
    }
    return (u64)((i64)p * (i64)p + 1 + S);
}

GroupStructure group_structure(u64 p, unsigned n, u64 bound) {
    check_bound(p, n, bound);
    const std::uint32_t pp = (std::uint32_t)p;
    Field F(pp, n);
    const u64 N = brute_force_count(p, n, bound);
    auto chi = kernels::quadratic_character_table(pp);

    // primes l with l^2 | N, and the largest k worth testing
    struct Track {
        u64 ell;
        int kmax;
        std::vector<u64> hist;  // hist[j]: points first killed by l^j
    };
    // E[l^k] full forces l^k | q - 1 (Weil pairing) as well as l^{2k} | N
    const u64 qm1 = (n == 1 ? p : p * p) - 1;
    std::vector<Track> tracks;
    for (auto [ell, e] : factor_u64(N)) {
        int k = 0;
        for (u64 m = qm1; k < e / 2 && m % ell == 0; m /= ell) ++k;
        if (k >= 1) tracks.push_back({ell, k, std::vector<u64>(k + 2, 0)});
    }

    if (!tracks.empty()) {
        // x -> -x comes from the automorphism (x, y) -> (-x, iy) whenever i lies
        // in the field, and x -> conj(x) from Frobenius over F_{p^2}.  Both
        // preserve point orders, so one representative per orbit is enough.
        const bool fold_u = F.ext || p % 4 == 1;
        const std::uint32_t half = (pp - 1) / 2;
        const std::uint32_t umax = fold_u ? half + 1 : pp;
        const std::uint32_t vmax = F.ext ? half + 1 : 1;
        for (std::uint32_t v = 0; v < vmax; ++v) {
            for (std::uint32_t u = 0; u < umax; ++u) {
                El x{u, v};
                El fx = curve_rhs(F, x);
                int c = chi[fnorm(F, fx)];
                if (c < 0) continue;
                u64 weight = c == 0 ? 1 : 2;
                if (fold_u && u != 0) weight *= 2;
                if (v != 0) weight *= 2;
                for (auto& t : tracks) {
                    int first = t.kmax + 1;
                    if (c == 0) {
                        if (t.ell == 2) first = 1;
                    } else {
                        XZ Q{x, {1, 0}};
                        for (int j = 1; j <= t.kmax; ++j) {
                            if (t.ell != 2 && is_two_torsion(F, Q)) break;
                            Q = t.ell == 2 ? xdbl(F, Q) : xmul(F, Q, t.ell);
                            if (fzero(Q.Z)) { first = j; break; }
                        }
                    }
                    t.hist[first] += weight;
                }
            }
        }
    }

    u64 d = 1;
    for (const auto& t : tracks) {
        u64 killed = 1;  // the point at infinity
        u64 lk = 1;
        for (int k = 1; k <= t.kmax; ++k) {
            killed += t.hist[k];
            lk *= t.ell;
            if (killed != lk * lk) break;
            d *= t.ell;
        }
    }
    GroupStructure g{d, N / d};
    u64 q = n == 1 ? p : p * p;
    if (g.e % g.d != 0 || (q - 1) % g.d != 0) throw std::logic_error("group_structure: inconsistent invariants");
    return g;
}

BigInt empirical_dE(unsigned d, u64 x) {
    if (x < 13) throw std::domain_error("empirical_dE: x must be >= 13");
    BigInt g = 0;
    bool any = false;
    for (std::uint32_t p : primes_upto((std::uint32_t)x)) {
        if (p % 4 != 1 || kConductor % p == 0) continue;
        BigInt o = order_pn(p, d);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), o.get_mpz_t());
        any = true;
    }
    if (!any) throw std::domain_error("empirical_dE: no qualifying prime");
    return g;
}

i64 trace_by_charsum(i64 A, i64 B, u64 p) {
    if (p < 5 || !is_prime_u64(p)) throw std::domain_error("trace_by_charsum: prime p >= 5 required");
    return -charsum_cubic(A, B, p);
}

FactorStats factor_stats(const BigInt& n) {
    FactorStats s;
    if (n <= 1) return s;
    Factorization f = factor(n);
    s.omega = omega(f);
    s.Omega = big_omega(f);
    s.squarefree = squarefree(f);
    s.smallest = f.front().p;
    return s;
}

OrderRecord make_order_record(u64 p, const std::vector<unsigned>& ells) {
    FrobeniusData fd = frobenius(p);
    if (fd.supersingular) throw std::domain_error("split primes only");
    OrderRecord r;
    r.p = p;
    r.a_p = fd.a_p;
    r.pi = fd.pi;
    r.A1 = exact_div(fd.pi - GaussInt(1, 0), GaussInt(2, 2)).norm();
    r.A2 = exact_div(fd.pi + GaussInt(1, 0), GaussInt(2, 0)).norm();
    r.f1 = factor_stats(r.A1);
    r.f2 = factor_stats(r.A2);
    mpz_gcd(r.gcd12.get_mpz_t(), r.A1.get_mpz_t(), r.A2.get_mpz_t());
    for (unsigned l : ells) {
        BigInt a = cyclotomic_factor(p, l);
        r.A_ell[l] = a;
        r.f_ell[l] = factor_stats(a);
    }
    return r;
}

}  // namespace cmsieve
