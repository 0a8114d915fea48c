#pragma once
// Elementary integer arithmetic shared by every module.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace cmsieve {

using BigInt = mpz_class;
using Rational = mpq_class;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

// --- modular helpers (64-bit) ---
inline u64 mulmod(u64 a, u64 b, u64 m) { return (u64)((u128)a * b % m); }
u64 powmod(u64 a, u64 e, u64 m);
u64 invmod(u64 a, u64 m);   // throws if not invertible
i64 mod_floor(i64 a, i64 m);

// Legendre symbol (a/p) for an odd prime p.
int legendre(i64 a, u64 p);
// Square root of a mod odd prime p (Tonelli-Shanks); throws if a is a non-residue.
u64 sqrt_mod(u64 a, u64 p);

// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime_u64(u64 n);
// Primality of arbitrary integers: exact below 2^64, 64 rounds above.
bool is_prime(const BigInt& n);

// Primes p <= n (Eratosthenes).
std::vector<std::uint32_t> primes_upto(std::uint32_t n);

// --- factorization ---
struct PrimePower {
    BigInt p;
    int e;
};
using Factorization = std::vector<PrimePower>;  // ascending primes

Factorization factor(const BigInt& n);
std::vector<std::pair<u64, int>> factor_u64(u64 n);

int omega(const Factorization& f);        // distinct primes
int big_omega(const Factorization& f);    // with multiplicity
bool squarefree(const Factorization& f);
BigInt product(const Factorization& f);

int moebius(u64 n);
u64 euler_phi(u64 n);
bool is_squarefree_u64(u64 n);
std::vector<u64> divisors(u64 n);

// Logarithmic integral li(x) = PV int_0^x dt/log t.
double li(double x);

// Rendering and parsing helpers.
std::string to_string(const BigInt& v);
std::string to_string(const Rational& q);
Rational parse_rational(const std::string& s);  // "3", "-2/7", "0.25"

}  // namespace cmsieve
