#pragma once
// Frobenius data, group orders and group structures for E: y^2 = x^3 - x.

#include "cmsieve/gaussian.hpp"

#include <map>
#include <vector>

namespace cmsieve {

constexpr u64 kConductor = 32;
constexpr u64 kDefaultEnumBound = 100000000;  // elements of F_{p^n}

struct FrobeniusData {
    u64 p = 0;
    i64 a_p = 0;
    bool supersingular = false;
    GaussInt pi;  // primary, norm p; zero when supersingular
};

FrobeniusData frobenius(u64 p);

// pi^n + conj(pi)^n for the roots of T^2 - a T + p.
BigInt lucas_trace(i64 a, u64 p, unsigned n);
// |E(F_{p^n})| for a curve with trace a at p.
BigInt order_from_trace(i64 a, u64 p, unsigned n);
// N(Phi_d(pi)) for pi a root of T^2 - a T + p (Moebius quotient of orders).
BigInt cyclotomic_norm_from_trace(i64 a, u64 p, unsigned d);

BigInt order_pn(u64 p, unsigned n);
BigInt cyclotomic_factor(u64 p, unsigned d);
// Integer coefficients of Phi_d, constant term first.
std::vector<BigInt> cyclotomic_poly(unsigned d);

// Point count of y^2 = x^3 - x over F_{p^n}, n in {1,2}, by enumeration of x.
u64 brute_force_count(u64 p, unsigned n, u64 bound = kDefaultEnumBound);

struct GroupStructure {
    u64 d = 0;  // E = Z/d x Z/e, d | e
    u64 e = 0;
};
// Invariant factors from full enumeration and torsion counting.
GroupStructure group_structure(u64 p, unsigned n, u64 bound = kDefaultEnumBound);

// gcd of |E(F_{p^d})| over split p <= x.
BigInt empirical_dE(unsigned d, u64 x);

// a_p = -sum_x chi(x^3 + A x + B) for an arbitrary short Weierstrass curve.
i64 trace_by_charsum(i64 A, i64 B, u64 p);

struct FactorStats {
    int omega = 0;
    int Omega = 0;
    bool squarefree = true;
    BigInt smallest = 0;  // 0 when the value is 1
};
FactorStats factor_stats(const BigInt& n);

struct OrderRecord {
    u64 p = 0;
    i64 a_p = 0;
    GaussInt pi;
    BigInt A1, A2;
    std::map<unsigned, BigInt> A_ell;
    FactorStats f1, f2;
    std::map<unsigned, FactorStats> f_ell;
    BigInt gcd12;
};

OrderRecord make_order_record(u64 p, const std::vector<unsigned>& ells);

}  // namespace cmsieve
