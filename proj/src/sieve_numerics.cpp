#include "cmsieve/sieve_numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace cmsieve {

const double kEulerGamma = 0.57721566490153286061;
const double kTwoEGamma = 2.0 * std::exp(kEulerGamma);

// ---------------------------------------------------------------------------
// F, f

namespace {

constexpr double kFTop = BoundFns::kFMax;
constexpr double kfTop = BoundFns::kfMax;

double F_closed(double s) { return s < 1 ? kTwoEGamma : kTwoEGamma / s; }
double f_closed(double s) { return kTwoEGamma * std::log(s - 1) / s; }

double interp(const std::vector<double>& tab, double s0, double s) {
    double u = (s - s0) / BoundFns::kStep;
    size_t i = (size_t)u;
    if (i + 1 >= tab.size()) return tab.back();
    double w = u - (double)i;
    return tab[i] * (1 - w) + tab[i + 1] * w;
}

}  // namespace

namespace {

// Tables at step h: node i of F is s = 1 + i h, node j of f is s = 2 + j h.
void build_tables(double h, std::vector<double>& Ft, std::vector<double>& ft) {
    const size_t nF = (size_t)std::llround((kFTop - 1.0) / h) + 1;
    const size_t nf = (size_t)std::llround((kfTop - 2.0) / h) + 1;
    Ft.assign(nF, 0.0);
    ft.assign(nf, 0.0);
    const size_t i3 = (size_t)std::llround(2.0 / h);  // F index of s = 3
    const size_t j4 = (size_t)std::llround(2.0 / h);  // f index of s = 4
    for (size_t i = 0; i <= i3; ++i) Ft[i] = F_closed(1.0 + (double)i * h);
    for (size_t j = 0; j <= j4; ++j) ft[j] = f_closed(2.0 + (double)j * h);

    // s F(s) = 3 F(3) + int_3^s f(t-1) dt  and  s f(s) = 4 f(4) + int_4^s F(t-1) dt,
    // advanced together by the trapezoid rule.  Both integrands lag by one
    // unit, so every value needed is already filled in.
    double accF = 3.0 * Ft[i3];
    double accf = 4.0 * ft[j4];
    const size_t lag = (size_t)std::llround(1.0 / h);
    size_t i = i3, j = j4;
    while (i + 1 < nF || j + 1 < nf) {
        if (i + 1 < nF) {
            // f(t-1) at t = 1 + i h is f index i - 2/h
            accF += 0.5 * h * (ft[i - 2 * lag] + ft[i + 1 - 2 * lag]);
            ++i;
            Ft[i] = accF / (1.0 + (double)i * h);
        }
        if (j + 1 < nf) {
            // F(t-1) at t = 2 + j h is F at 1 + j h, i.e. F index j
            accf += 0.5 * h * (Ft[j] + Ft[j + 1]);
            ++j;
            ft[j] = accf / (2.0 + (double)j * h);
        }
    }
}

}  // namespace

BoundFns::BoundFns() {
    // trapezoid error is O(h^2); one Richardson step removes the leading term
    std::vector<double> F2, f2;
    build_tables(kStep, F_tab_, f_tab_);
    build_tables(kStep / 2, F2, f2);
    for (size_t i = 0; i < F_tab_.size(); ++i) F_tab_[i] = (4 * F2[2 * i] - F_tab_[i]) / 3;
    for (size_t j = 0; j < f_tab_.size(); ++j) f_tab_[j] = (4 * f2[2 * j] - f_tab_[j]) / 3;
}

const BoundFns& BoundFns::instance() {
    static const BoundFns fns;
    return fns;
}

int BoundFns::depth_F(double s) { return s <= 3 ? 1 : 1 + (int)std::ceil((s - 3) / 2); }
int BoundFns::depth_f(double s) { return s <= 4 ? 1 : 1 + (int)std::ceil((s - 4) / 2); }

double BoundFns::F(double s) const {
    if (!(s > 0)) throw std::domain_error("outside sieve domain");
    if (s <= 3) return F_closed(s);
    if (s > kFTop) throw std::domain_error("recursion depth exceeded");
    return interp(F_tab_, 1.0, s);
}

double BoundFns::f(double s) const {
    if (!(s >= 2)) throw std::domain_error("outside sieve domain");
    if (s <= 4) return f_closed(s);
    if (s > kfTop) throw std::domain_error("recursion depth exceeded");
    return interp(f_tab_, 2.0, s);
}

// ---------------------------------------------------------------------------
// quadrature

static double simpson_rec(const std::function<double(double)>& g, double a, double b, double fa, double fm,
                          double fb, double whole, double tol, int depth, bool& ok) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = g(lm), frm = g(rm);
    double left = (m - a) / 6 * (fa + 4 * flm + fm);
    double right = (b - m) / 6 * (fm + 4 * frm + fb);
    double diff = left + right - whole;
    if (std::fabs(diff) <= 15 * tol) return left + right + diff / 15;
    if (depth <= 0) {
        ok = false;
        return left + right;
    }
    return simpson_rec(g, a, m, fa, flm, fm, left, tol / 2, depth - 1, ok) +
           simpson_rec(g, m, b, fm, frm, fb, right, tol / 2, depth - 1, ok);
}

double adaptive_simpson(const std::function<double(double)>& g, double a, double b, double tol, int max_depth) {
    if (a == b) return 0;
    double fa = g(a), fb = g(b), fm = g(0.5 * (a + b));
    double whole = (b - a) / 6 * (fa + 4 * fm + fb);
    bool ok = true;
    double v = simpson_rec(g, a, b, fa, fm, fb, whole, tol, max_depth, ok);
    if (!ok) throw std::runtime_error("quadrature did not converge");
    return v;
}

double integrate_pieces(const std::function<double(double)>& g, double a, double b, std::vector<double> breaks,
                        double tol) {
    std::vector<double> pts{a};
    std::sort(breaks.begin(), breaks.end());
    for (double x : breaks)
        if (x > a && x < b) pts.push_back(x);
    pts.push_back(b);
    double s = 0;
    double piece_tol = tol / (double)(pts.size() - 1);
    for (size_t k = 0; k + 1 < pts.size(); ++k) s += adaptive_simpson(g, pts[k], pts[k + 1], piece_tol);
    return s;
}

// ---------------------------------------------------------------------------
// vector sieve

namespace {

// s1 ranges over [lo, hi]; s2 = sigma2 (1 - s1/sigma1).
struct Line {
    double sigma1, sigma2, lo, hi;
    double s2(double s1) const { return sigma2 * (1 - s1 / sigma1); }
};

Line make_line(double sigma1, double sigma2, double smin) {
    if (!(sigma1 > 0 && sigma2 > 0)) throw std::domain_error("infeasible constraint");
    Line L{sigma1, sigma2, smin, sigma1 * (1 - smin / sigma2)};
    if (L.hi < L.lo - 1e-12) throw std::domain_error("infeasible constraint");
    if (L.hi < L.lo) L.hi = L.lo;
    return L;
}

double F_obj(const Line& L, double s1) {
    const auto& B = BoundFns::instance();
    return B.F(s1) * B.F(std::max(L.s2(s1), L.lo));
}

double f_obj(const Line& L, double s1) {
    const auto& B = BoundFns::instance();
    double s2 = std::max(L.s2(s1), L.lo);
    double F1 = B.F(s1), F2 = B.F(s2);
    return B.f(s1) * F2 + B.f(s2) * F1 - F1 * F2;
}

// sign = +1 maximizes, -1 minimizes
template <class Obj>
VecOpt optimize_line(const Line& L, Obj obj, double sign) {
    VecOpt best;
    const double step = 1e-3;
    size_t n = (size_t)std::ceil((L.hi - L.lo) / step);
    double bx = L.lo, bv = sign * obj(L, L.lo);
    for (size_t k = 1; k <= n; ++k) {
        double x = std::min(L.lo + (double)k * step, L.hi);
        double v = sign * obj(L, x);
        if (v > bv) {
            bv = v;
            bx = x;
        }
    }
    // golden-section refinement around the best grid node
    double a = std::max(L.lo, bx - step), b = std::min(L.hi, bx + step);
    if (b - a > 1e-12) {
        const double g = 0.5 * (std::sqrt(5.0) - 1);
        double c = b - g * (b - a), d = a + g * (b - a);
        double fc = sign * obj(L, c), fd = sign * obj(L, d);
        for (int it = 0; it < 60 && b - a > 1e-11; ++it) {
            if (fc > fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - g * (b - a);
                fc = sign * obj(L, c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + g * (b - a);
                fd = sign * obj(L, d);
            }
        }
        double x = 0.5 * (a + b);
        double v = sign * obj(L, x);
        if (v > bv) {
            bv = v;
            bx = x;
        }
    }
    best.value = sign * bv;
    best.s1 = bx;
    best.s2 = std::max(L.s2(bx), L.lo);
    return best;
}

template <class Obj>
double grid_line(const Line& L, Obj obj, double sign, double step) {
    size_t n = (size_t)std::ceil((L.hi - L.lo) / step);
    double bv = sign * obj(L, L.lo);
    for (size_t k = 1; k <= n; ++k) bv = std::max(bv, sign * obj(L, std::min(L.lo + (double)k * step, L.hi)));
    return sign * bv;
}

}  // namespace

VecOpt F_vec_opt(double sigma1, double sigma2) { return optimize_line(make_line(sigma1, sigma2, 1.0), F_obj, -1.0); }
VecOpt f_vec_opt(double sigma1, double sigma2) { return optimize_line(make_line(sigma1, sigma2, 2.0), f_obj, 1.0); }
double F_vec_grid(double sigma1, double sigma2, double step) {
    return grid_line(make_line(sigma1, sigma2, 1.0), F_obj, -1.0, step);
}
double f_vec_grid(double sigma1, double sigma2, double step) {
    return grid_line(make_line(sigma1, sigma2, 2.0), f_obj, 1.0, step);
}

// ---------------------------------------------------------------------------
// H and G

static void check_params(const SieveParams& sp, bool pair) {
    auto bad = [](double t, double d) { return !(t > 0 && t < d && d < 1); };
    if (sp.alpha <= 0 || sp.lambda < 0 || bad(sp.theta1, sp.delta1) || (pair && bad(sp.theta2, sp.delta2)))
        throw std::domain_error("invalid sieve parameters");
}

HParts H_parts(const SieveParams& sp) {
    check_params(sp, true);
    if (sp.alpha - std::max(sp.delta1, sp.delta2) <= 0) throw std::domain_error("delta must stay below alpha");
    HParts h;
    h.fvec = f_vec(sp.alpha / sp.theta1, sp.alpha / sp.theta2);
    // Below t = alpha - theta1 - theta2 the constraint line has no point with
    // s_i >= 1; the trivial bound F(1)^2 is used there.
    const double cut = sp.alpha - sp.theta1 - sp.theta2;
    const double trivial = kTwoEGamma * kTwoEGamma;
    auto I = [&](double theta, double delta) {
        auto g = [&](double t) {
            double w = (1 - t / delta) / t;
            if (t >= cut) return w * trivial;
            return w * F_vec((sp.alpha - t) / sp.theta1, (sp.alpha - t) / sp.theta2);
        };
        return integrate_pieces(g, theta, delta, {cut}, 1e-6);
    };
    h.I1 = I(sp.theta1, sp.delta1);
    h.I2 = I(sp.theta2, sp.delta2);
    h.value = h.fvec - sp.lambda * (h.I1 + h.I2);
    return h;
}

double G_weighted(double theta, double delta, double lambda, double alpha) {
    if (!(theta > 0 && theta < delta && alpha - delta > 0 && lambda >= 0)) throw std::domain_error("invalid sieve parameters");
    const auto& B = BoundFns::instance();
    auto g = [&](double t) { return B.F((alpha - t) / theta) * (1 - t / delta) / t; };
    // F has kinks where its argument crosses an odd integer
    std::vector<double> br;
    for (int k = 1; k <= 11; k += 2) br.push_back(alpha - k * theta);
    return B.f(alpha / theta) - lambda * integrate_pieces(g, theta, delta, br, 1e-6);
}

// ---------------------------------------------------------------------------
// bounds

BoundCase parse_bound_case(const std::string& name) {
    if (name == "cm-pair") return BoundCase::CMPair;
    if (name == "cm-ell") return BoundCase::CMEll;
    if (name == "cm-p5") return BoundCase::CMP5;
    if (name == "noncm-omega") return BoundCase::NonCMOmega;
    if (name == "noncm-Omega" || name == "noncm-bigomega") return BoundCase::NonCMBigOmega;
    throw std::invalid_argument("unknown case: " + name);
}

std::string bound_case_name(BoundCase c) {
    switch (c) {
    case BoundCase::CMPair: return "cm-pair";
    case BoundCase::CMEll: return "cm-ell";
    case BoundCase::CMP5: return "cm-p5";
    case BoundCase::NonCMOmega: return "noncm-omega";
    case BoundCase::NonCMBigOmega: return "noncm-Omega";
    }
    return "?";
}

static void check_ell(BoundCase c, unsigned ell) {
    if (c == BoundCase::CMPair || c == BoundCase::CMP5) return;
    if (ell < 3 || !is_prime_u64(ell)) throw std::domain_error("ell not admissible for case");
}

SieveParams default_params(BoundCase c, unsigned ell) {
    check_ell(c, ell);
    SieveParams sp;
    switch (c) {
    case BoundCase::CMPair:
        sp = {1 / 4.01, 1 / 30.0, 1 / 31.0, 1 / 4.2, 1 / 4.3, 1 / 2.4};
        break;
    case BoundCase::CMEll:
    case BoundCase::CMP5:
        sp = {1 / 4.01, 1 / 15.0, 0, 1 / 4.1, 0, 1 / 1.3};
        break;
    case BoundCase::NonCMOmega:
        sp = {1 / 5.0, 1 / 20.0, 0, 1 / 5.1, 0, 1 / 1.2};
        break;
    case BoundCase::NonCMBigOmega:
        sp = {1 / 5.0, 1 / 20.0, 0, 1 / 8.1, 0, 2.0};
        break;
    }
    return sp;
}

static long floor_bound(double v) { return (long)std::floor(v + 1e-9); }

static double weight_sum(BoundCase c, unsigned ell, const SieveParams& sp) {
    switch (c) {
    case BoundCase::CMPair: return 1 / sp.lambda + 1 / sp.delta1 + 1 / sp.delta2;
    case BoundCase::CMP5: return 1 / sp.lambda + 1 / sp.delta1;
    default: return 1 / sp.lambda + (double)(ell - 1) / sp.delta1;
    }
}

BoundResult evaluate_bound(BoundCase c, unsigned ell, const SieveParams& sp) {
    check_ell(c, ell);
    BoundResult r;
    r.which = c;
    r.ell = ell;
    r.params = sp;
    r.value = c == BoundCase::CMPair ? H_combined(sp) : G_weighted(sp.theta1, sp.delta1, sp.lambda, sp.alpha);
    r.bound = floor_bound(weight_sum(c, ell, sp));
    return r;
}

long bound_table(BoundCase c, unsigned ell) {
    BoundResult r = evaluate_bound(c, ell, default_params(c, ell));
    if (!(r.value > 0)) throw std::runtime_error("parameters do not certify bound");
    return r.bound;
}

namespace {

// Cumulative integrals A(d) = int_theta^d g(t)/t dt and B(d) = int_theta^d g(t) dt
// on a uniform t-grid, so that int (1 - t/d) g(t)/t dt = A(d) - B(d)/d.
struct Cumulative {
    double t0, h;
    std::vector<double> A, B;
    double weighted(double d) const {
        double u = (d - t0) / h;
        size_t i = std::min((size_t)u, A.size() - 2);
        double w = u - (double)i;
        double a = A[i] * (1 - w) + A[i + 1] * w, b = B[i] * (1 - w) + B[i + 1] * w;
        return a - b / d;
    }
};

Cumulative cumulate(const std::function<double(double)>& g, double t0, double t1, size_t n) {
    Cumulative c{t0, (t1 - t0) / (double)n, std::vector<double>(n + 1, 0), std::vector<double>(n + 1, 0)};
    double prev = g(t0);
    for (size_t k = 1; k <= n; ++k) {
        double t = t0 + (double)k * c.h, tm = t - 0.5 * c.h;
        double gm = g(tm), gt = g(t);
        // Simpson on each cell
        c.B[k] = c.B[k - 1] + c.h / 6 * (prev + 4 * gm + gt);
        c.A[k] = c.A[k - 1] + c.h / 6 * (prev / (t - c.h) + 4 * gm / tm + gt / t);
        prev = gt;
    }
    return c;
}

}  // namespace

BoundResult optimize_params(BoundCase c, unsigned ell, double alpha) {
    check_ell(c, ell);
    if (!(alpha > 0 && alpha < 0.5)) throw std::domain_error("alpha out of range");
    const auto& Bf = BoundFns::instance();
    BoundResult best;
    best.which = c;
    best.ell = ell;
    best.bound = std::numeric_limits<long>::max();
    double best_margin = -1;
    const double k = c == BoundCase::CMPair || c == BoundCase::CMP5 ? 1.0 : (double)(ell - 1);

    auto consider = [&](const SieveParams& sp) {
        BoundResult r = evaluate_bound(c, ell, sp);
        if (!(r.value > 0)) return;
        if (r.bound < best.bound || (r.bound == best.bound && r.value > best_margin)) {
            best = r;
            best_margin = r.value;
        }
    };

    if (c != BoundCase::CMPair) {
        // f(alpha/theta) needs depth <= 3, i.e. alpha/theta <= 8
        for (double s = 2.1; s <= 8.0 + 1e-9; s += 0.1) {
            double theta = alpha / s;
            double fs = Bf.f(s);
            if (fs <= 0) continue;
            auto g = [&](double t) { return Bf.F((alpha - t) / theta); };
            double dmax = alpha * 0.999;
            Cumulative cu = cumulate(g, theta, dmax, 4000);
            double bd = 0, bv = std::numeric_limits<double>::infinity();
            for (double inv = 1 / dmax; inv <= 1 / theta - 1e-9; inv += 0.01) {
                double d = 1 / inv;
                double I = cu.weighted(d);
                // lambda just inside the positivity region
                double v = I / fs + k * inv;
                if (v < bv) {
                    bv = v;
                    bd = d;
                }
            }
            if (bd == 0) continue;
            double I = cu.weighted(bd);
            SieveParams sp{alpha, theta, 0, bd, 0, 0.999 * fs / I};
            consider(sp);
        }
    } else {
        for (double s = 4.1; s <= 8.0 + 1e-9; s += 0.25) {
            SieveParams base{alpha, alpha / s, alpha / s, 0, 0, 0};
            double fv;
            try {
                fv = f_vec(s, s);
            } catch (const std::domain_error&) {
                continue;
            }
            if (fv <= 0) continue;
            const double cut = alpha - 2 * base.theta1;
            const double trivial = kTwoEGamma * kTwoEGamma;
            auto g = [&](double t) {
                if (t >= cut) return trivial;
                return F_vec((alpha - t) / base.theta1, (alpha - t) / base.theta2);
            };
            double dmax = alpha * 0.999;
            Cumulative cu = cumulate(g, base.theta1, dmax, 400);
            double bd = 0, bv = std::numeric_limits<double>::infinity();
            for (double inv = 1 / dmax; inv <= s / alpha - 1e-9; inv += 0.02) {
                double d = 1 / inv;
                double v = 2 * cu.weighted(d) / fv + 2 * inv;
                if (v < bv) {
                    bv = v;
                    bd = d;
                }
            }
            if (bd == 0) continue;
            SieveParams sp = base;
            sp.delta1 = sp.delta2 = bd;
            sp.lambda = 0.999 * fv / (2 * cu.weighted(bd));
            consider(sp);
        }
    }
    if (best.bound == std::numeric_limits<long>::max()) throw std::runtime_error("empty feasible set");
    return best;
}

// ---------------------------------------------------------------------------
// densities

static Rational h_local(u64 p, bool in1, bool in2) {
    if (!in1 && !in2) return 1;
    if (in1 && in2) {
        if (p % 4 == 1) return Rational(2, (unsigned long)((p - 1) * (p - 1)));
        return 0;
    }
    if (p == 2) return in1 ? Rational(1, 2) : Rational(0);
    if (p % 4 == 1) {
        Rational a(2, (unsigned long)(p - 1));
        Rational b(1, (unsigned long)((p - 1) * (p - 1)));
        return a - b;
    }
    return Rational(1, (unsigned long)(p * p - 1));
}

Rational density_h(u64 d1, u64 d2) {
    if (d1 == 0 || d2 == 0 || !is_squarefree_u64(d1) || !is_squarefree_u64(d2)) return 0;
    Rational r = 1;
    std::vector<u64> ps;
    for (auto [p, e] : factor_u64(d1)) ps.push_back(p);
    for (auto [p, e] : factor_u64(d2)) ps.push_back(p);
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    for (u64 p : ps) r *= h_local(p, d1 % p == 0, d2 % p == 0);
    r.canonicalize();
    return r;
}

static Rational g_local(u64 ell, u64 p) {
    if (ell == 2) return h_local(p, false, true);
    if (p == 2) return 0;
    Rational phi = (unsigned long)(ell - 1);
    if (p == ell) {
        if (ell % 4 == 1) return Rational(2, (unsigned long)(ell - 1)) - Rational(1, (unsigned long)((ell - 1) * (ell - 1)));
        return Rational(1, (unsigned long)(ell * ell - 1));
    }
    if (p % 4 == 1 && p % ell == 1) {
        Rational a = 2 * phi / (unsigned long)(p - 1);
        Rational b = phi * phi / (unsigned long)((p - 1) * (p - 1));
        return a - b;
    }
    if (p % 4 == 3 && mulmod(p, p, ell) == 1) return phi / (unsigned long)(p * p - 1);
    return 0;
}

Rational density_g(u64 ell, u64 d) {
    if (ell < 2 || !is_prime_u64(ell)) throw std::domain_error("ell must be prime");
    if (d == 0 || !is_squarefree_u64(d)) return 0;
    Rational r = 1;
    for (auto [p, e] : factor_u64(d)) r *= g_local(ell, p);
    r.canonicalize();
    return r;
}

Rational density_hstar(u64 d) {
    if (d == 0 || !is_squarefree_u64(d)) return 0;
    Rational r = 1;
    for (auto [p, e] : factor_u64(d)) r *= h_local(p, true, false) + h_local(p, false, true) - h_local(p, true, true);
    r.canonicalize();
    return r;
}

// ---------------------------------------------------------------------------
// Euler products

EulerResult euler_product(EulerWhich which, u64 cutoff, unsigned ell) {
    if (cutoff < 3) throw std::domain_error("cutoff must be >= 3");
    if (cutoff > 4000000000ULL) throw std::domain_error("cutoff too large");
    EulerResult r;
    double logv = 0;
    for (std::uint32_t p : primes_upto((std::uint32_t)cutoff)) {
        double fac = 1;
        double pd = (double)p;
        switch (which) {
        case EulerWhich::CPair:
            if (p == 2) continue;
            fac = p % 4 == 3 ? 1 - 2 / (pd * pd - 1) : 1 - (3 * pd - 1) / ((pd - 1) * (pd - 1) * (pd - 1));
            break;
        case EulerWhich::CEll:
            fac = 1 - g_local(ell, p).get_d();
            break;
        case EulerWhich::VRatio:
            if (p % 4 != 1) continue;
            fac = (1 - 1 / pd) * (1 - 1 / pd);
            break;
        }
        logv += std::log(fac);
        r.last_factor = fac;
        r.last_prime = p;
        ++r.terms;
    }
    double v = std::exp(logv);
    switch (which) {
    case EulerWhich::CPair: r.value = 0.5 * v; break;
    case EulerWhich::CEll:
    case EulerWhich::VRatio: r.value = v * std::log((double)cutoff); break;
    }
    return r;
}

// ---------------------------------------------------------------------------

static u64 coprime_count(const std::vector<std::pair<u64, u64>>& C, u64 k1, u64 k2) {
    u64 n = 0;
    for (auto [c1, c2] : C)
        if (std::gcd(c1, k1) == 1 && std::gcd(c2, k2) == 1) ++n;
    return n;
}

u64 mobius_pair_inversion(const std::vector<std::pair<u64, u64>>& C, u64 d1, u64 d2) {
    if (!is_squarefree_u64(d1) || !is_squarefree_u64(d2)) throw std::domain_error("d1, d2 must be square-free");
    i64 s = 0;
    for (u64 k1 : divisors(d1))
        for (u64 k2 : divisors(d2)) s += (i64)moebius(k1) * moebius(k2) * (i64)coprime_count(C, k1, k2);
    return (u64)s;
}

u64 direct_pair_count(const std::vector<std::pair<u64, u64>>& C, u64 d1, u64 d2) {
    u64 n = 0;
    for (auto [c1, c2] : C)
        if (c1 % d1 == 0 && c2 % d2 == 0) ++n;
    return n;
}

double fit_linear_sieve_L(LinearDensity which, unsigned ell, const std::vector<std::pair<u64, u64>>& wz) {
    u64 top = 0;
    for (auto [w, z] : wz) {
        if (!(w >= 2 && w < z)) throw std::domain_error("need 2 <= w < z");
        top = std::max(top, z);
    }
    auto primes = primes_upto((std::uint32_t)top);
    // prefix sums of -log(1 - h(p))
    std::vector<double> pref(primes.size() + 1, 0);
    for (size_t k = 0; k < primes.size(); ++k) {
        u64 p = primes[k];
        double h = which == LinearDensity::H1 ? h_local(p, true, false).get_d()
                   : which == LinearDensity::H2 ? h_local(p, false, true).get_d()
                                                : g_local(ell, p).get_d();
        if (h >= 1) throw std::domain_error("density reaches 1");
        pref[k + 1] = pref[k] - std::log1p(-h);
    }
    auto idx = [&](u64 x) { return (size_t)(std::lower_bound(primes.begin(), primes.end(), (std::uint32_t)x) - primes.begin()); };
    double L = -std::numeric_limits<double>::infinity();
    for (auto [w, z] : wz) {
        double lhs = std::exp(pref[idx(z)] - pref[idx(w)]);
        double lw = std::log((double)w), lz = std::log((double)z);
        L = std::max(L, (lhs * lw / lz - 1) * lw);
    }
    return L;
}

}  // namespace cmsieve
