#include "cmsieve/arith.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace cmsieve {

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

u64 invmod(u64 a, u64 m) {
    i64 t = 0, nt = 1;
    i64 r = (i64)m, nr = (i64)(a % m);
    while (nr != 0) {
        i64 q = r / nr;
        i64 tmp = t - q * nt; t = nt; nt = tmp;
        tmp = r - q * nr; r = nr; nr = tmp;
    }
    if (r != 1) throw std::domain_error("invmod: not invertible");
    return (u64)mod_floor(t, (i64)m);
}

i64 mod_floor(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

int legendre(i64 a, u64 p) {
    u64 r = (u64)mod_floor(a, (i64)p);
    if (r == 0) return 0;
    return powmod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

u64 sqrt_mod(u64 a, u64 p) {
    a %= p;
    if (a == 0) return 0;
    if (p == 2) return a;
    if (legendre((i64)a, p) != 1) throw std::domain_error("sqrt_mod: non-residue");
    if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
    // Tonelli-Shanks
    u64 q = p - 1;
    int s = 0;
    while ((q & 1) == 0) { q >>= 1; ++s; }
    u64 z = 2;
    while (legendre((i64)z, p) != -1) ++z;
    u64 m = (u64)s;
    u64 c = powmod(z, q, p);
    u64 t = powmod(a, q, p);
    u64 r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        u64 i = 0, tt = t;
        while (tt != 1) { tt = mulmod(tt, tt, p); ++i; }
        u64 b = c;
        for (u64 j = 0; j + 1 < m - i; ++j) b = mulmod(b, b, p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return r;
}

// ---------------------------------------------------------------------------
// primality

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    static const u64 small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 p : small) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (u64 a : small) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) { comp = false; break; }
        }
        if (comp) return false;
    }
    return true;
}

static bool fits_u64(const BigInt& n) { return n >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64; }

static u64 to_u64(const BigInt& n) {
    u64 v = 0;
    mpz_export(&v, nullptr, -1, sizeof(v), 0, 0, n.get_mpz_t());
    return v;
}

static BigInt from_u64(u64 v) {
    BigInt r;
    mpz_import(r.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
    return r;
}

bool is_prime(const BigInt& n) {
    if (n < 2) return false;
    if (fits_u64(n)) return is_prime_u64(to_u64(n));
    return mpz_probab_prime_p(n.get_mpz_t(), 64) != 0;
}

std::vector<std::uint32_t> primes_upto(std::uint32_t n) {
    std::vector<std::uint32_t> out;
    if (n < 2) return out;
    std::vector<bool> comp(n + 1, false);
    for (u64 i = 2; i <= n; ++i) {
        if (comp[i]) continue;
        out.push_back((std::uint32_t)i);
        for (u64 j = i * i; j <= n; j += i) comp[j] = true;
    }
    return out;
}

// ---------------------------------------------------------------------------
// factorization

static const std::vector<std::uint32_t>& trial_primes() {
    static std::vector<std::uint32_t> tp;
    static std::once_flag once;
    std::call_once(once, [] { tp = primes_upto(1000000); });
    return tp;
}

static u64 brent_u64(u64 n) {
    if (n % 2 == 0) return 2;
    for (u64 c = 1;; ++c) {
        u64 y = 2, r = 1, q = 1, g = 1, x = 0, ys = 0;
        const u64 m = 128;
        auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        do {
            x = y;
            for (u64 i = 0; i < r; ++i) y = f(y);
            u64 k = 0;
            do {
                ys = y;
                for (u64 i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r <<= 1;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

static BigInt brent_big(const BigInt& n) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    for (unsigned long c = 1;; ++c) {
        BigInt y = 2, r = 1, q = 1, g = 1, x, ys, diff;
        const unsigned long m = 128;
        auto f = [&](BigInt& v) {
            v = v * v + c;
            v %= n;
        };
        do {
            x = y;
            for (BigInt i = 0; i < r; ++i) f(y);
            BigInt k = 0;
            do {
                ys = y;
                BigInt lim = r - k;
                if (lim > m) lim = m;
                for (BigInt i = 0; i < lim; ++i) {
                    f(y);
                    diff = abs(x - y);
                    q = q * diff % n;
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                f(ys);
                diff = abs(x - ys);
                mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

static void split_rec(const BigInt& n, std::vector<BigInt>& out) {
    if (n == 1) return;
    if (is_prime(n)) { out.push_back(n); return; }
    BigInt d = fits_u64(n) ? from_u64(brent_u64(to_u64(n))) : brent_big(n);
    split_rec(d, out);
    split_rec(n / d, out);
}

Factorization factor(const BigInt& n0) {
    if (n0 <= 0) throw std::domain_error("factor: non-positive input");
    Factorization res;
    BigInt n = n0;
    // trial division up to min(10^6, cube root of n)
    BigInt cube;
    mpz_root(cube.get_mpz_t(), n.get_mpz_t(), 3);
    for (std::uint32_t p : trial_primes()) {
        if (cube < p) break;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            int e = 0;
            while (mpz_divisible_ui_p(n.get_mpz_t(), p)) { mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p); ++e; }
            res.push_back({BigInt(p), e});
            mpz_root(cube.get_mpz_t(), n.get_mpz_t(), 3);
        }
    }
    std::vector<BigInt> rest;
    split_rec(n, rest);
    std::sort(rest.begin(), rest.end());
    for (const auto& q : rest) {
        if (!res.empty() && res.back().p == q) res.back().e++;
        else res.push_back({q, 1});
    }
    std::sort(res.begin(), res.end(), [](const PrimePower& a, const PrimePower& b) { return a.p < b.p; });
    return res;
}

std::vector<std::pair<u64, int>> factor_u64(u64 n) {
    std::vector<std::pair<u64, int>> out;
    for (const auto& pp : factor(from_u64(n))) out.push_back({to_u64(pp.p), pp.e});
    return out;
}

int omega(const Factorization& f) { return (int)f.size(); }

int big_omega(const Factorization& f) {
    int s = 0;
    for (const auto& pp : f) s += pp.e;
    return s;
}

bool squarefree(const Factorization& f) {
    return std::all_of(f.begin(), f.end(), [](const PrimePower& pp) { return pp.e == 1; });
}

BigInt product(const Factorization& f) {
    BigInt r = 1;
    for (const auto& pp : f)
        for (int i = 0; i < pp.e; ++i) r *= pp.p;
    return r;
}

int moebius(u64 n) {
    if (n == 0) return 0;
    int m = 1;
    for (u64 p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        m = -m;
    }
    if (n > 1) m = -m;
    return m;
}

u64 euler_phi(u64 n) {
    u64 r = n;
    for (u64 p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        r -= r / p;
    }
    if (n > 1) r -= r / n;
    return r;
}

bool is_squarefree_u64(u64 n) { return n != 0 && moebius(n) != 0; }

std::vector<u64> divisors(u64 n) {
    std::vector<u64> d;
    for (u64 i = 1; i * i <= n; ++i) {
        if (n % i) continue;
        d.push_back(i);
        if (i != n / i) d.push_back(n / i);
    }
    std::sort(d.begin(), d.end());
    return d;
}

double li(double x) {
    if (x <= 0) return 0.0;
    if (x == 1.0) return -INFINITY;
    // Ramanujan's series
    const double gamma = 0.57721566490153286061;
    double L = std::log(x);
    double sum = 0.0, fact = 1.0, pw = 1.0, inner = 0.0;
    for (int n = 1; n < 200; ++n) {
        pw *= L;
        fact *= n;
        if ((n - 1) % 2 == 0) inner += 1.0 / (2 * ((n - 1) / 2) + 1);
        double term = ((n - 1) % 2 ? -1.0 : 1.0) * pw / (fact * std::pow(2.0, n - 1)) * inner;
        sum += term;
        if (std::fabs(term) < 1e-17 * std::fabs(sum)) break;
    }
    return gamma + std::log(L) + std::sqrt(x) * sum;
}

std::string to_string(const BigInt& v) { return v.get_str(); }

std::string to_string(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational");
    auto dot = s.find('.');
    Rational r;
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        BigInt num(digits, 10);
        BigInt den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, s.size() - dot - 1);
        r = Rational(num, den);
    } else {
        r = Rational(s, 10);
    }
    r.canonicalize();
    return r;
}

}  // namespace cmsieve
