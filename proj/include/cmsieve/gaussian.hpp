#pragma once
// Gaussian integers Z[i] and square-free ideals.

#include "cmsieve/arith.hpp"

#include <functional>
#include <string>
#include <vector>

namespace cmsieve {

struct GaussInt {
    BigInt re = 0;
    BigInt im = 0;

    GaussInt() = default;
    GaussInt(BigInt r, BigInt i) : re(std::move(r)), im(std::move(i)) {}
    GaussInt(long r, long i = 0) : re(r), im(i) {}

    BigInt norm() const { return re * re + im * im; }
    GaussInt conj() const { return {re, -im}; }
    bool is_zero() const { return re == 0 && im == 0; }
    bool is_unit() const { return norm() == 1; }

    friend GaussInt operator+(const GaussInt& a, const GaussInt& b) { return {a.re + b.re, a.im + b.im}; }
    friend GaussInt operator-(const GaussInt& a, const GaussInt& b) { return {a.re - b.re, a.im - b.im}; }
    friend GaussInt operator-(const GaussInt& a) { return {-a.re, -a.im}; }
    friend GaussInt operator*(const GaussInt& a, const GaussInt& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const GaussInt& a, const GaussInt& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const GaussInt& a, const GaussInt& b) { return !(a == b); }
};

// "a+bi" with signs, e.g. "-1+2i", "3-2i", "1", "-i".
std::string to_string(const GaussInt& z);

// a = q*b + r with N(r) < N(b) (nearest-integer quotient).
void divmod(const GaussInt& a, const GaussInt& b, GaussInt& q, GaussInt& r);
bool divides(const GaussInt& d, const GaussInt& z);
GaussInt exact_div(const GaussInt& z, const GaussInt& d);  // throws unless d | z
GaussInt pow(GaussInt z, unsigned n);

// Unique associate with re > 0, im >= 0 (zero stays zero).
GaussInt canonical(const GaussInt& z);
bool associates(const GaussInt& a, const GaussInt& b);

// u*z with u a unit and u*z = 1 mod 2+2i. Requires odd norm.
GaussInt primary_associate(const GaussInt& z);
bool is_primary(const GaussInt& z);

// Primary pi with N(pi) = p for p = 1 mod 4.
GaussInt split_prime(u64 p);
// Exhaustive search oracle (p < 10^4); used by tests.
GaussInt split_prime_search(u64 p);

GaussInt gauss_gcd(const GaussInt& a, const GaussInt& b);

struct PrimaryPrime {
    u64 p;
    GaussInt pi;
};

// Visits every p = 1 mod 4 in [lo, hi] in increasing order.
void for_each_primary_prime(u64 lo, u64 hi, const std::function<void(u64, const GaussInt&)>& fn);
std::vector<PrimaryPrime> enumerate_primary_primes(u64 x);

// --- square-free ideals ---

enum class PrimeTag { Ramified, Split, SplitConj, Inert };
const char* tag_name(PrimeTag t);

struct PrimeIdeal {
    PrimeTag tag;
    u64 p;          // rational prime below
    GaussInt gen;   // 1+i, pi_p, conj(pi_p), or q

    BigInt norm() const;
};

class SquareFreeIdeal {
public:
    SquareFreeIdeal() = default;  // unit ideal
    explicit SquareFreeIdeal(std::vector<PrimeIdeal> factors);

    static PrimeIdeal ramified();
    static PrimeIdeal split(u64 p, bool conjugate = false);
    static PrimeIdeal inert(u64 q);
    // Factors a nonzero element; throws if the ideal it generates is not square-free.
    static SquareFreeIdeal from_generator(const GaussInt& z);

    const std::vector<PrimeIdeal>& factors() const { return factors_; }
    GaussInt generator() const;
    BigInt norm() const;
    bool coprime(const SquareFreeIdeal& o) const;
    SquareFreeIdeal operator*(const SquareFreeIdeal& o) const;  // requires coprime

private:
    std::vector<PrimeIdeal> factors_;
};

BigInt ideal_d(const SquareFreeIdeal& a);
BigInt ideal_phi(const SquareFreeIdeal& a);
int mu_hat(const SquareFreeIdeal& a);

}  // namespace cmsieve
