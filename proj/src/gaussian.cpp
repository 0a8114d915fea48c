#include "cmsieve/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cmsieve {

std::string to_string(const GaussInt& z) {
    if (z.im == 0) return z.re.get_str();
    std::string s;
    if (z.re != 0) s = z.re.get_str();
    BigInt a = abs(z.im);
    if (z.im < 0) s += "-";
    else if (z.re != 0) s += "+";
    if (a != 1) s += a.get_str();
    s += "i";
    return s;
}

// round(x / n) for n > 0, ties toward +inf
static BigInt round_div(const BigInt& x, const BigInt& n) {
    BigInt t = 2 * x + n, q;
    BigInt d = 2 * n;
    mpz_fdiv_q(q.get_mpz_t(), t.get_mpz_t(), d.get_mpz_t());
    return q;
}

void divmod(const GaussInt& a, const GaussInt& b, GaussInt& q, GaussInt& r) {
    if (b.is_zero()) throw std::domain_error("division by zero in Z[i]");
    GaussInt num = a * b.conj();
    BigInt n = b.norm();
    q = GaussInt(round_div(num.re, n), round_div(num.im, n));
    r = a - q * b;
}

bool divides(const GaussInt& d, const GaussInt& z) {
    if (d.is_zero()) return z.is_zero();
    GaussInt num = z * d.conj();
    BigInt n = d.norm();
    return mpz_divisible_p(num.re.get_mpz_t(), n.get_mpz_t()) && mpz_divisible_p(num.im.get_mpz_t(), n.get_mpz_t());
}

GaussInt exact_div(const GaussInt& z, const GaussInt& d) {
    if (!divides(d, z)) throw std::domain_error("exact_div: not divisible");
    GaussInt num = z * d.conj();
    BigInt n = d.norm();
    return {num.re / n, num.im / n};
}

GaussInt pow(GaussInt z, unsigned n) {
    GaussInt r(1, 0);
    while (n) {
        if (n & 1) r = r * z;
        z = z * z;
        n >>= 1;
    }
    return r;
}

GaussInt canonical(const GaussInt& z) {
    if (z.is_zero()) return z;
    GaussInt w = z;
    for (int k = 0; k < 4; ++k) {
        if (w.re > 0 && w.im >= 0) return w;
        w = GaussInt(-w.im, w.re);  // multiply by i
    }
    throw std::logic_error("canonical: no associate in first quadrant");
}

bool associates(const GaussInt& a, const GaussInt& b) { return canonical(a) == canonical(b); }

bool is_primary(const GaussInt& z) {
    static const GaussInt two_one_i(2, 2);
    return divides(two_one_i, z - GaussInt(1, 0));
}

GaussInt primary_associate(const GaussInt& z) {
    if (mpz_even_p(z.norm().get_mpz_t())) throw std::domain_error("no primary associate");
    GaussInt w = z;
    for (int k = 0; k < 4; ++k) {
        if (is_primary(w)) return w;
        w = GaussInt(-w.im, w.re);
    }
    throw std::logic_error("primary_associate: none found");
}

GaussInt split_prime(u64 p) {
    if (p % 4 != 1 || !is_prime_u64(p)) throw std::domain_error("prime does not split");
    // Cornacchia on x^2 + y^2 = p, seeded by sqrt(-1) mod p
    u64 r = sqrt_mod(p - 1, p);
    if (r < p - r) r = p - r;
    u64 a = p, b = r;
    while ((u128)b * b > p) {
        u64 t = a % b;
        a = b;
        b = t;
    }
    u64 rest = p - b * b;
    u64 y = (u64)std::llround(std::sqrt((double)rest));
    while (y * y > rest) --y;
    while ((y + 1) * (y + 1) <= rest) ++y;
    if (y * y != rest) throw std::logic_error("Cornacchia failed");
    return primary_associate(GaussInt(BigInt((unsigned long)b), BigInt((unsigned long)y)));
}

GaussInt split_prime_search(u64 p) {
    if (p % 4 != 1) throw std::domain_error("prime does not split");
    if (p >= 10000) throw std::domain_error("search oracle limited to p < 10^4");
    long s = (long)std::sqrt((double)p) + 1;
    for (long a = -s; a <= s; ++a) {
        for (long b = -s; b <= s; ++b) {
            if ((u64)(a * a + b * b) != p) continue;
            GaussInt z(a, b);
            if (is_primary(z)) return z;
        }
    }
    throw std::logic_error("no primary element of norm p");
}

GaussInt gauss_gcd(const GaussInt& a0, const GaussInt& b0) {
    if (a0.is_zero() && b0.is_zero()) throw std::domain_error("gcd(0,0) undefined");
    GaussInt a = a0, b = b0, q, r;
    while (!b.is_zero()) {
        divmod(a, b, q, r);
        a = b;
        b = r;
    }
    return canonical(a);
}

void for_each_primary_prime(u64 lo, u64 hi, const std::function<void(u64, const GaussInt&)>& fn) {
    if (hi < 5) return;
    for (std::uint32_t p : primes_upto((std::uint32_t)hi)) {
        if (p < lo || p % 4 != 1) continue;
        fn(p, split_prime(p));
    }
}

std::vector<PrimaryPrime> enumerate_primary_primes(u64 x) {
    std::vector<PrimaryPrime> out;
    for_each_primary_prime(0, x, [&](u64 p, const GaussInt& pi) { out.push_back({p, pi}); });
    return out;
}

// ---------------------------------------------------------------------------
// ideals

const char* tag_name(PrimeTag t) {
    switch (t) {
        case PrimeTag::Ramified: return "ramified";
        case PrimeTag::Split: return "split";
        case PrimeTag::SplitConj: return "split-conjugate";
        case PrimeTag::Inert: return "inert";
    }
    return "?";
}

BigInt PrimeIdeal::norm() const { return gen.norm(); }

PrimeIdeal SquareFreeIdeal::ramified() { return {PrimeTag::Ramified, 2, GaussInt(1, 1)}; }

PrimeIdeal SquareFreeIdeal::split(u64 p, bool conjugate) {
    GaussInt pi = split_prime(p);
    if (conjugate) return {PrimeTag::SplitConj, p, pi.conj()};
    return {PrimeTag::Split, p, pi};
}

PrimeIdeal SquareFreeIdeal::inert(u64 q) {
    if (q % 4 != 3 || !is_prime_u64(q)) throw std::domain_error("not an inert prime");
    return {PrimeTag::Inert, q, GaussInt((long)q, 0)};
}

SquareFreeIdeal::SquareFreeIdeal(std::vector<PrimeIdeal> factors) : factors_(std::move(factors)) {
    for (size_t i = 0; i < factors_.size(); ++i)
        for (size_t j = i + 1; j < factors_.size(); ++j)
            if (associates(factors_[i].gen, factors_[j].gen))
                throw std::domain_error("ideal is not square-free");
}

SquareFreeIdeal SquareFreeIdeal::from_generator(const GaussInt& z0) {
    if (z0.is_zero()) throw std::domain_error("zero ideal");
    std::vector<PrimeIdeal> fs;
    GaussInt z = z0;
    for (const auto& pp : factor(z0.norm())) {
        u64 p = pp.p.get_ui();
        std::vector<PrimeIdeal> cands;
        if (p == 2) cands.push_back(ramified());
        else if (p % 4 == 1) { cands.push_back(split(p, false)); cands.push_back(split(p, true)); }
        else cands.push_back(inert(p));
        for (const auto& c : cands) {
            int e = 0;
            while (divides(c.gen, z)) { z = exact_div(z, c.gen); ++e; }
            if (e > 1) throw std::domain_error("ideal is not square-free");
            if (e == 1) fs.push_back(c);
        }
    }
    return SquareFreeIdeal(std::move(fs));
}

GaussInt SquareFreeIdeal::generator() const {
    GaussInt g(1, 0);
    for (const auto& f : factors_) g = g * f.gen;
    return g;
}

BigInt SquareFreeIdeal::norm() const {
    BigInt n = 1;
    for (const auto& f : factors_) n *= f.norm();
    return n;
}

bool SquareFreeIdeal::coprime(const SquareFreeIdeal& o) const {
    for (const auto& a : factors_)
        for (const auto& b : o.factors_)
            if (associates(a.gen, b.gen)) return false;
    return true;
}

SquareFreeIdeal SquareFreeIdeal::operator*(const SquareFreeIdeal& o) const {
    std::vector<PrimeIdeal> all = factors_;
    all.insert(all.end(), o.factors_.begin(), o.factors_.end());
    return SquareFreeIdeal(std::move(all));
}

BigInt ideal_d(const SquareFreeIdeal& a) {
    std::vector<u64> ps;
    for (const auto& f : a.factors()) ps.push_back(f.p);
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    BigInt d = 1;
    for (u64 p : ps) d *= (unsigned long)p;
    return d;
}

BigInt ideal_phi(const SquareFreeIdeal& a) {
    BigInt r = 1;
    for (const auto& f : a.factors()) r *= f.norm() - 1;
    return r;
}

int mu_hat(const SquareFreeIdeal& a) { return a.factors().size() % 2 ? -1 : 1; }

}  // namespace cmsieve
