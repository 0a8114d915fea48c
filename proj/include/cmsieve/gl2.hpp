#pragma once
// Conjugacy data in GL2(Z/nZ) for n = q, q^2 and the densities built from it.

#include "cmsieve/arith.hpp"

#include <map>
#include <set>
#include <utility>
#include <vector>

namespace cmsieve {

struct Mat2 {
    u64 a = 0, b = 0, c = 0, d = 0;
    u64 n = 1;
    u64 tr() const { return (a + d) % n; }
    u64 det() const { return (mulmod(a, d, n) + n - mulmod(b, c, n)) % n; }
};

// n must be a prime q or a prime square q^2.
u64 gl2_order(u64 n);
// Counts invertible matrices one by one; n <= 49.
u64 gl2_order_enumerate(u64 n);

struct ConjClass {
    Mat2 rep;
    u64 size = 0;
};

struct ConjClassTable {
    u64 n = 0;
    unsigned ell = 0;
    u64 group_order = 0;
    u64 C_count = 0;
    std::vector<ConjClass> classes;
    Rational density;
};

// Conjugacy classes of GL2(Z/nZ) as orbits under a generating set; n <= 49.
std::vector<ConjClass> conjugacy_classes(u64 n);

// Small F_{q^2} = F_q[t]/(t^2 - c1 t - c0).
struct Fq2 {
    u64 q = 0, c0 = 0, c1 = 0;
    explicit Fq2(u64 q_);
    using El = std::pair<u64, u64>;
    El add(El x, El y) const { return {(x.first + y.first) % q, (x.second + y.second) % q}; }
    El mul(El x, El y) const;
    bool is_zero(El x) const { return x.first == 0 && x.second == 0; }
};

// Roots of Phi_ell in F_{q^2}, distinct.
std::vector<Fq2::El> cyclotomic_roots(unsigned ell, u64 q);

// (tr, det) mod q with some root e of Phi_ell satisfying e^2 - tr e + det = 0.
std::set<std::pair<u64, u64>> Cq_trace_det(unsigned ell, u64 q);

struct CqCount {
    u64 brute = 0;
    u64 formula = 0;
    u64 by_classes = 0;  // recomputed from class representatives
};
CqCount count_Cq(unsigned ell, u64 q);
// Closed form; 0 when ell does not divide q^2 - 1 and ell != q.
u64 Cq_formula(unsigned ell, u64 q);
ConjClassTable conj_class_table(unsigned ell, u64 q);

struct Cq2Count {
    u64 count = 0;
    double K = 0;  // count / q^6
    std::set<std::pair<u64, u64>> trace_det;  // (tr, det) mod q^2 occurring in C_{q^2}
};
Cq2Count count_Cq2(unsigned ell, u64 q);

// Density of q | A_ell for a non-CM curve.  i_q is used only when ell | q + 1.
Rational g_nonCM(unsigned ell, u64 q, const Rational& i_q, bool q_divides_ME = false);

struct CEResult {
    Rational exact;
    double value = 0;
};
// sum_{d | M_E} mu(d) prod_{q | d} i_q |C_q| / |G_q|; missing i_q default to 1.
CEResult c_E_compute(u64 me, unsigned ell, const std::map<u64, Rational>& i_config);

struct ChebotarevResult {
    u64 primes = 0;          // good primes checked
    u64 divisible = 0;       // q | A_ell(p)
    u64 in_Cq = 0;           // sigma_p in C_q
    u64 pointwise_agree = 0;     // pointwise equivalence holds
    u64 square_checked = 0;  // q^2 | A_ell(p)
    u64 square_in_Cq2 = 0;   // ... with (a_p, p) mod q^2 in the C_{q^2} set
    double empirical = 0;    // divisible / primes
    double sigma_share = 0;  // in_Cq / primes
    double predicted = 0;    // |C_q| / |G_q|
    double i_q_empirical = 0;
};
// Curve y^2 = x^3 + A x + B over p <= x.  The C_{q^2} check runs for q <= 7.
ChebotarevResult chebotarev_census(i64 A, i64 B, unsigned ell, u64 q, u64 x);

}  // namespace cmsieve
