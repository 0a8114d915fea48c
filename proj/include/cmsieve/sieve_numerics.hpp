#pragma once
// Linear and vector sieve bound functions, weighted-sieve integrals,
// multiplicative densities and Euler products.

#include "cmsieve/arith.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace cmsieve {

extern const double kEulerGamma;
// 2 e^gamma
extern const double kTwoEGamma;

// F and f of the linear sieve.  Closed forms on [1,3] and [2,4], extended by
// (sF(s))' = f(s-1) and (sf(s))' = F(s-1) up to five layers:
// F on (0,11], f on [2,12].
class BoundFns {
public:
    static const BoundFns& instance();

    double F(double s) const;
    double f(double s) const;
    // 1 on the closed-form interval, 2 and 3 for the extension layers.
    static int depth_F(double s);
    static int depth_f(double s);

    static constexpr double kStep = 1e-4;
    static constexpr double kFMax = 11.0;
    static constexpr double kfMax = 12.0;

private:
    BoundFns();
    std::vector<double> F_tab_;  // nodes s = 1 + i*kStep
    std::vector<double> f_tab_;  // nodes s = 2 + i*kStep
};

inline double F_upper(double s) { return BoundFns::instance().F(s); }
inline double f_lower(double s) { return BoundFns::instance().f(s); }

// Vector sieve main terms on the line s1/sigma1 + s2/sigma2 = 1.
struct VecOpt {
    double value = 0;
    double s1 = 0, s2 = 0;
};
VecOpt F_vec_opt(double sigma1, double sigma2);
VecOpt f_vec_opt(double sigma1, double sigma2);
inline double F_vec(double sigma1, double sigma2) { return F_vec_opt(sigma1, sigma2).value; }
inline double f_vec(double sigma1, double sigma2) { return f_vec_opt(sigma1, sigma2).value; }
// Dense-grid evaluation used as a reference for the optimizer.
double F_vec_grid(double sigma1, double sigma2, double step);
double f_vec_grid(double sigma1, double sigma2, double step);

// Adaptive Simpson on [a,b]; throws std::runtime_error on non-convergence.
double adaptive_simpson(const std::function<double(double)>& g, double a, double b, double tol = 1e-6,
                        int max_depth = 40);
// Same, split at the given interior points.
double integrate_pieces(const std::function<double(double)>& g, double a, double b, std::vector<double> breaks,
                        double tol = 1e-6);

struct SieveParams {
    double alpha = 1.0 / 4.01;
    double theta1 = 0, theta2 = 0;
    double delta1 = 0, delta2 = 0;
    double lambda = 0;
};

struct HParts {
    double fvec = 0, I1 = 0, I2 = 0, value = 0;
};
HParts H_parts(const SieveParams& sp);
inline double H_combined(const SieveParams& sp) { return H_parts(sp).value; }

double G_weighted(double theta, double delta, double lambda, double alpha);

enum class BoundCase { CMPair, CMEll, CMP5, NonCMOmega, NonCMBigOmega };
BoundCase parse_bound_case(const std::string& name);
std::string bound_case_name(BoundCase c);

struct BoundResult {
    BoundCase which = BoundCase::CMEll;
    unsigned ell = 0;
    SieveParams params;  // theta1/delta1 carry the single-sieve values
    double value = 0;    // G or H
    long bound = 0;
};

// Parameters the bounds are certified with.
SieveParams default_params(BoundCase c, unsigned ell);
// Evaluates the certificate; does not throw on a non-positive value.
BoundResult evaluate_bound(BoundCase c, unsigned ell, const SieveParams& sp);
// Throws std::runtime_error("parameters do not certify bound") when value <= 0.
long bound_table(BoundCase c, unsigned ell = 0);

// Grid search over the free parameters.  Throws when nothing certifies.
BoundResult optimize_params(BoundCase c, unsigned ell, double alpha);

// Densities; non-square-free arguments give 0.
Rational density_h(u64 d1, u64 d2);
Rational density_g(u64 ell, u64 d);
Rational density_hstar(u64 d);

enum class EulerWhich { CPair, CEll, VRatio };
struct EulerResult {
    double value = 0;
    double last_factor = 1;
    u64 last_prime = 0;
    size_t terms = 0;
};
EulerResult euler_product(EulerWhich which, u64 cutoff, unsigned ell = 3);

// |C_{d1,d2}| via the double Moebius sum over coprimality counts.
u64 mobius_pair_inversion(const std::vector<std::pair<u64, u64>>& C, u64 d1, u64 d2);
u64 direct_pair_count(const std::vector<std::pair<u64, u64>>& C, u64 d1, u64 d2);

// Smallest L with prod_{w<=p<z} (1-h(p))^{-1} <= (log z / log w)(1 + L/log w)
// over the given (w, z) pairs.
enum class LinearDensity { H1, H2, GEll };
double fit_linear_sieve_L(LinearDensity which, unsigned ell, const std::vector<std::pair<u64, u64>>& wz);

}  // namespace cmsieve
