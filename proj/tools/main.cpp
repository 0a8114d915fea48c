// cmsieve: command-line front end.

#include "cmsieve/census.hpp"
#include "cmsieve/curve_orders.hpp"
#include "cmsieve/gl2.hpp"
#include "cmsieve/kernels.hpp"
#include "cmsieve/sieve_numerics.hpp"
#include "cmsieve/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

using namespace cmsieve;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";

enum Exit { kOk = 0, kVerifyFail = 1, kArgs = 2, kCache = 3, kCert = 4 };

struct ArgError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// 10 significant digits, stored back as a double so the JSON writer keeps it short.
double sig10(double v) {
    if (!std::isfinite(v)) return v;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return std::strtod(buf, nullptr);
}

std::string fmt10(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

// Accepts "1000", "1e6", "2.5e3" when the value is a non-negative integer.
u64 parse_bound(const std::string& s) {
    if (s.empty()) throw ArgError("empty bound");
    bool plain = s.find_first_not_of("0123456789") == std::string::npos;
    if (plain) return std::stoull(s);
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (*end || !(v >= 0) || v > 1.8e19 || v != std::floor(v)) throw ArgError("bad bound '" + s + "'");
    return (u64)v;
}

Rational parse_rat(const std::string& s) {
    try {
        return parse_rational(s);
    } catch (const std::exception&) {
        throw ArgError("bad rational '" + s + "'");
    }
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

std::string cache_dir() {
    const char* env = std::getenv("SIEVE_ORDERS_CACHE");
    return env && *env ? env : ".cmsieve-cache";
}

struct Manifest {
    std::string subcommand;
    std::vector<std::string> argv;
    json params = json::object();
    json paths = json::object();
    std::uint64_t seed = 0;
    double wall = 0;

    json to_json() const {
        return json{{"subcommand", subcommand}, {"argv", argv},   {"params", params},         {"paths", paths},
                    {"seed", seed},             {"version", kVersion}, {"wall_time_s", sig10(wall)}};
    }
};

// --- census ---

int cmd_census(const std::string& x_s, const std::vector<unsigned>& ells, const std::string& z1, const std::string& z2,
               const std::string& seps, std::string cache, bool no_cache, const std::string& csv_out,
               const std::string& summary_out, unsigned threads, u64 struct_bound, Manifest& m) {
    CensusConfig cfg;
    cfg.x = parse_bound(x_s);
    cfg.ell_list = ells;
    cfg.z1_exp = parse_rat(z1);
    cfg.z2_exp = parse_rat(z2);
    cfg.s_eps_exp = parse_rat(seps);
    cfg.threads = threads;
    cfg.struct_bound = struct_bound;
    if (!no_cache) {
        if (cache.empty()) {
            std::filesystem::create_directories(cache_dir());
            cache = cache_dir() + "/orders.csv";
        }
        cfg.cache_path = cache;
    }
    try {
        validate(cfg);
    } catch (const std::invalid_argument& e) {
        throw ArgError(e.what());
    }
    m.params = {{"x", cfg.x},
                {"ell", ells},
                {"z1_exp", to_string(cfg.z1_exp)},
                {"z2_exp", to_string(cfg.z2_exp)},
                {"s_eps_exp", to_string(cfg.s_eps_exp)},
                {"struct_bound", struct_bound}};
    m.paths = {{"cache", cfg.cache_path}, {"csv", csv_out}, {"summary", summary_out}};

    CensusTable t = run_census(cfg);

    const double lx = std::log((double)std::max<u64>(cfg.x, 2));
    json base = {{"z1", sig10(std::exp(lx * cfg.z1_exp.get_d()))}, {"z2", sig10(std::exp(lx * cfg.z2_exp.get_d()))}};
    json summary = json::object();
    for (const auto& key : kCensusKeys) {
        const auto& w = t.witnesses.at(key);
        json params = json::object();
        if (key == "T1.2-omega") {
            json per = json::object();
            for (auto [l, n] : t.n_ell) per[std::to_string(l)] = {{"n_ell", n}, {"count", t.omega_by_ell.at(l)}};
            params["per_ell"] = per;
        } else if (key == "T1.2-P5") {
            params["bound"] = bound_table(BoundCase::CMP5);
        } else if (key == "T1.3-pair") {
            params = base;
            params["max_total"] = 10;
        } else if (key == "T1.3-P10") {
            params["max_omega"] = 10;
        } else if (key == "T1.4-structure" || key == "T1.5-cyclic") {
            params["struct_bound"] = cfg.struct_bound;
            params["unchecked"] = t.struct_unchecked;
            if (key == "T1.5-cyclic") {
                json d1 = json::object(), d2 = json::object();
                for (auto [d, n] : t.index_dist_p) d1[std::to_string(d)] = n;
                for (auto [d, n] : t.index_dist_p2) d2[std::to_string(d)] = n;
                params["index_distribution_p"] = d1;
                params["index_distribution_p2"] = d2;
            }
        } else if (key == "S-epsilon") {
            params["z"] = sig10(std::exp(lx * cfg.s_eps_exp.get_d()));
        }
        std::vector<u64> head(w.begin(), w.begin() + std::min<size_t>(w.size(), 20));
        summary[key] = {{"count", w.size()}, {"x", cfg.x}, {"params", params}, {"first_witnesses", head}};
    }

    if (!csv_out.empty()) write_csv(csv_out, t.rows);
    if (!summary_out.empty()) write_text(summary_out, summary.dump(2) + "\n");

    std::cout << "split primes: " << t.rows.size() << " (cached " << t.rows_from_cache << ", new " << t.rows_appended
              << ")\n";
    for (const auto& key : kCensusKeys) std::cout << key << " " << t.counters.at(key) << "\n";
    return kOk;
}

// --- orders ---

json factor_json(const BigInt& n) {
    json arr = json::array();
    if (n > 1)
        for (const auto& pe : factor(n)) arr.push_back(json::array({to_string(pe.p), pe.e}));
    return arr;
}

int cmd_orders(const std::string& p_s, const std::string& to_s, const std::vector<unsigned>& ells,
               const std::vector<unsigned>& ns, bool brute, bool structure, Manifest& m) {
    u64 lo = parse_bound(p_s);
    u64 hi = to_s.empty() ? lo : parse_bound(to_s);
    if (lo < 3 || hi < lo || hi > 4000000000ULL) throw ArgError("need 3 <= p <= to");
    if (hi - lo > 1000000) throw ArgError("range too wide");
    for (unsigned n : ns)
        if (n == 0) throw ArgError("n must be positive");
    m.params = {{"p", lo}, {"to", hi}, {"ell", ells}, {"n", ns}, {"brute", brute}, {"structure", structure}};
    json out = json::array();
    for (u64 p = lo; p <= hi; ++p) {
        if (!is_prime_u64(p)) continue;
        FrobeniusData fd = frobenius(p);
        json row = {{"p", p}, {"a_p", fd.a_p}, {"supersingular", fd.supersingular}};
        if (!fd.supersingular) {
            OrderRecord r = make_order_record(p, ells);
            row["pi"] = to_string(r.pi);
            row["A1"] = to_string(r.A1);
            row["A2"] = to_string(r.A2);
            row["A1_factors"] = factor_json(r.A1);
            row["A2_factors"] = factor_json(r.A2);
            row["gcd_A1_A2"] = to_string(r.gcd12);
            json al = json::object();
            for (const auto& [l, v] : r.A_ell)
                al[std::to_string(l)] = {{"value", to_string(v)}, {"Omega", r.f_ell.at(l).Omega},
                                         {"omega", r.f_ell.at(l).omega}};
            row["A_ell"] = al;
        }
        json orders = json::object();
        for (unsigned n : ns) {
            json o = {{"order", to_string(order_pn(p, n))}};
            if (brute && n <= 2) o["brute"] = brute_force_count(p, n);
            if (structure && n <= 2) {
                GroupStructure g = group_structure(p, n);
                o["structure"] = json::array({g.d, g.e});
            }
            orders[std::to_string(n)] = o;
        }
        row["orders"] = orders;
        out.push_back(row);
    }
    std::cout << out.dump(2) << "\n";
    return kOk;
}

// --- sieve ---

json params_json(const SieveParams& sp) {
    return {{"alpha", sig10(sp.alpha)},   {"theta1", sig10(sp.theta1)}, {"theta2", sig10(sp.theta2)},
            {"delta1", sig10(sp.delta1)}, {"delta2", sig10(sp.delta2)}, {"lambda", sig10(sp.lambda)}};
}

int cmd_sieve(const std::string& case_s, unsigned ell, bool optimize, double alpha, double theta1, double theta2,
              double delta1, double delta2, double lambda, Manifest& m) {
    BoundCase c;
    try {
        c = parse_bound_case(case_s);
    } catch (const std::exception& e) {
        throw ArgError(e.what());
    }
    const bool needs_ell = c == BoundCase::CMEll || c == BoundCase::NonCMOmega || c == BoundCase::NonCMBigOmega;
    if (needs_ell && ell == 0) ell = 3;
    if (!needs_ell) ell = 0;
    BoundResult r;
    try {
        if (optimize) {
            double a = alpha > 0 ? alpha : default_params(c, ell).alpha;
            r = optimize_params(c, ell, a);
        } else {
            SieveParams sp = default_params(c, ell);
            if (alpha > 0) sp.alpha = alpha;
            if (theta1 > 0) sp.theta1 = theta1;
            if (theta2 > 0) sp.theta2 = theta2;
            if (delta1 > 0) sp.delta1 = delta1;
            if (delta2 > 0) sp.delta2 = delta2;
            if (lambda > 0) sp.lambda = lambda;
            r = evaluate_bound(c, ell, sp);
        }
    } catch (const std::domain_error& e) {
        throw ArgError(e.what());
    } catch (const std::runtime_error& e) {
        // optimizer found nothing that certifies
        json out = {{"case", bound_case_name(c)}, {"error", e.what()}};
        std::cout << out.dump(2) << "\n";
        return kCert;
    }
    m.params = {{"case", bound_case_name(c)}, {"ell", ell}, {"optimize", optimize}, {"params", params_json(r.params)}};
    json out = {{"case", bound_case_name(c)}, {"ell", ell},         {"params", params_json(r.params)},
                {"value", sig10(r.value)},    {"tolerance", 1e-6},  {"bound", r.bound},
                {"certified", r.value > 0}};
    if (c == BoundCase::CMPair) {
        HParts h = H_parts(r.params);
        out["parts"] = {{"fvec", sig10(h.fvec)}, {"I1", sig10(h.I1)}, {"I2", sig10(h.I2)}};
    }
    std::cout << out.dump(2) << "\n";
    return r.value > 0 ? kOk : kCert;
}

// --- gl2 ---

int cmd_gl2(unsigned ell, u64 q, bool square, const std::string& iq_s, const std::string& me_s, i64 A, i64 B,
            const std::string& x_s, Manifest& m) {
    if (ell < 3 || !is_prime_u64(ell)) throw ArgError("--ell must be an odd prime");
    if (q < 2 || !is_prime_u64(q)) throw ArgError("--q must be prime");
    Rational iq = parse_rat(iq_s);
    m.params = {{"ell", ell}, {"q", q}, {"square", square}, {"i_q", to_string(iq)}};
    json out = {{"ell", ell}, {"q", q}};
    if (q <= 49) {
        CqCount k = count_Cq(ell, q);
        u64 G = gl2_order(q);
        out["group_order"] = G;
        out["C_count"] = k.brute;
        out["C_formula"] = k.formula;
        out["C_by_classes"] = k.by_classes;
        out["density"] = std::to_string(k.brute) + "/" + std::to_string(G);
        out["density_reduced"] = to_string(Rational((unsigned long)k.brute, (unsigned long)G));
        out["density_value"] = sig10((double)k.brute / (double)G);
        out["classes"] = conjugacy_classes(q).size();
    } else {
        u64 f = Cq_formula(ell, q);
        out["group_order"] = gl2_order(q);
        out["C_formula"] = f;
    }
    out["g_nonCM"] = to_string(g_nonCM(ell, q, iq));
    if (square) {
        Cq2Count k2 = count_Cq2(ell, q);
        out["C_q2"] = k2.count;
        out["G_q2_order"] = gl2_order(q * q);
        out["K"] = sig10(k2.K);
    }
    if (!me_s.empty()) {
        u64 me = parse_bound(me_s);
        std::map<u64, Rational> cfg;
        for (auto [p, e] : factor_u64(me)) cfg[p] = iq;
        CEResult ce = c_E_compute(me, ell, cfg);
        out["c_E"] = {{"M_E", me}, {"exact", to_string(ce.exact)}, {"value", sig10(ce.value)}};
        m.params["M_E"] = me;
    }
    if (!x_s.empty()) {
        u64 x = parse_bound(x_s);
        ChebotarevResult r = chebotarev_census(A, B, ell, q, x);
        out["chebotarev"] = {{"curve", json::array({A, B})},
                             {"x", x},
                             {"primes", r.primes},
                             {"divisible", r.divisible},
                             {"in_Cq", r.in_Cq},
                             {"pointwise_agree", r.pointwise_agree},
                             {"square_checked", r.square_checked},
                             {"square_in_Cq2", r.square_in_Cq2},
                             {"empirical", sig10(r.empirical)},
                             {"sigma_share", sig10(r.sigma_share)},
                             {"predicted", sig10(r.predicted)},
                             {"i_q_empirical", sig10(r.i_q_empirical)}};
        m.params["curve"] = json::array({A, B});
        m.params["x"] = x;
    }
    std::cout << out.dump(2) << "\n";
    return kOk;
}

// --- constants ---

int cmd_constants(const std::string& which, const std::string& cutoff_s, unsigned ell, double s1, double s2,
                  u64 d1, u64 d2, Manifest& m) {
    m.params = {{"which", which}, {"cutoff", cutoff_s}, {"ell", ell}, {"s1", s1}, {"s2", s2}, {"d1", d1}, {"d2", d2}};
    json out = {{"which", which}};
    auto euler = [&](EulerWhich w) {
        u64 cutoff = parse_bound(cutoff_s);
        EulerResult r = euler_product(w, cutoff, ell);
        out["cutoff"] = cutoff;
        out["value"] = sig10(r.value);
        out["last_factor"] = fmt10(r.last_factor);
        out["last_factor_minus_1"] = sig10(r.last_factor - 1);
        out["last_prime"] = r.last_prime;
        out["terms"] = r.terms;
    };
    try {
        if (which == "c-pair") {
            euler(EulerWhich::CPair);
        } else if (which == "c-ell") {
            euler(EulerWhich::CEll);
            out["ell"] = ell;
        } else if (which == "v-ratio") {
            euler(EulerWhich::VRatio);
        } else if (which == "F") {
            out["s"] = s1;
            out["value"] = sig10(F_upper(s1));
            out["depth"] = BoundFns::depth_F(s1);
        } else if (which == "f") {
            out["s"] = s1;
            out["value"] = sig10(f_lower(s1));
            out["depth"] = BoundFns::depth_f(s1);
        } else if (which == "F-vec" || which == "f-vec") {
            VecOpt v = which == "F-vec" ? F_vec_opt(s1, s2) : f_vec_opt(s1, s2);
            out["sigma"] = json::array({s1, s2});
            out["value"] = sig10(v.value);
            out["argmax"] = json::array({sig10(v.s1), sig10(v.s2)});
        } else if (which == "h") {
            out["d"] = json::array({d1, d2});
            out["value"] = to_string(density_h(d1, d2));
        } else if (which == "h-star") {
            out["d"] = d1;
            out["value"] = to_string(density_hstar(d1));
        } else if (which == "g") {
            out["ell"] = ell;
            out["d"] = d1;
            out["value"] = to_string(density_g(ell, d1));
        } else if (which == "n-ell") {
            out["ell"] = ell;
            out["value"] = bound_table(BoundCase::CMEll, ell);
        } else if (which == "d-E") {
            u64 x = parse_bound(cutoff_s);
            out["degree"] = d1;
            out["x"] = x;
            out["value"] = to_string(empirical_dE((unsigned)d1, x));
        } else {
            throw ArgError("unknown constant '" + which + "'");
        }
    } catch (const std::domain_error& e) {
        throw ArgError(e.what());
    }
    std::cout << out.dump(2) << "\n";
    return kOk;
}

// --- verify ---

int cmd_verify(bool full, std::uint64_t seed, Manifest& m) {
    m.params = {{"mode", full ? "full" : "quick"}};
    m.seed = seed;
    VerifyOptions opt;
    opt.quick = !full;
    opt.seed = seed;
    opt.progress = [](const CheckResult& r) {
        std::cout << (r.pass ? "ok   " : "FAIL ") << r.name << " (" << fmt10(r.seconds) << " s)";
        if (!r.pass) std::cout << ": " << r.detail;
        std::cout << std::endl;
    };
    std::cout << "isa " << kernels::isa_name(kernels::active_isa()) << "\n";
    auto res = run_verify(opt);
    std::vector<std::string> failed;
    for (const auto& r : res)
        if (!r.pass) failed.push_back(r.name);
    if (failed.empty()) {
        std::cout << "all " << res.size() << " checks passed\n";
        return kOk;
    }
    std::cout << failed.size() << " failed:";
    for (const auto& f : failed) std::cout << " " << f;
    std::cout << "\n";
    return kVerifyFail;
}

int run(int argc, char** argv);

int replay(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgError("cannot read manifest " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const std::exception& e) {
        throw ArgError(std::string("bad manifest: ") + e.what());
    }
    std::vector<std::string> args = j.at("argv").get<std::vector<std::string>>();
    std::vector<char*> av;
    for (auto& a : args) av.push_back(a.data());
    av.push_back(nullptr);
    return run((int)args.size(), av.data());
}

int run(int argc, char** argv) {
    CLI::App app{"Group orders, sieve constants and GL2 densities for y^2 = x^3 - x"};
    app.set_version_flag("--version", kVersion);
    app.fallthrough();
    std::string manifest_out, replay_in;
    unsigned threads = 0;
    app.add_option("--manifest", manifest_out, "write a run manifest (JSON)");
    app.add_option("--replay", replay_in, "rerun the command recorded in a manifest");
    app.add_option("--threads", threads, "worker threads (default: all cores)");
    app.require_subcommand(0, 1);

    // census
    auto* census = app.add_subcommand("census", "almost-prime and structure predicates over split primes p <= x");
    std::string c_x, c_z1 = "1/30", c_z2 = "1/31", c_seps = "1/9", c_cache, c_csv, c_summary;
    std::vector<unsigned> c_ells{3};
    bool c_resume = false, c_nocache = false;
    u64 c_struct = 3000;
    census->add_option("--x", c_x, "bound, e.g. 1e5")->required();
    census->add_option("--ell", c_ells, "odd primes for the Omega(A_ell) predicate");
    census->add_option("--z1-exp", c_z1, "sifting exponent for A1");
    census->add_option("--z2-exp", c_z2, "sifting exponent for A2");
    census->add_option("--s-eps-exp", c_seps, "exponent for the S-epsilon thresholds");
    census->add_option("--cache", c_cache, "cache CSV (default $SIEVE_ORDERS_CACHE/orders.csv)");
    census->add_flag("--resume", c_resume, "extend the existing cache (the default)");
    census->add_flag("--no-cache", c_nocache, "neither read nor write the cache");
    census->add_option("--csv", c_csv, "write rows p <= x");
    census->add_option("--summary", c_summary, "write summary JSON");
    census->add_option("--struct-bound", c_struct, "largest p with group structures computed");

    // orders
    auto* orders = app.add_subcommand("orders", "Frobenius data and group orders");
    std::string o_p, o_to;
    std::vector<unsigned> o_ells{3}, o_ns{1, 2};
    bool o_brute = false, o_struct = false;
    orders->add_option("--p", o_p, "prime, or start of a range")->required();
    orders->add_option("--to", o_to, "end of range");
    orders->add_option("--ell", o_ells, "cyclotomic indices for A_ell");
    orders->add_option("--n", o_ns, "extension degrees");
    orders->add_flag("--brute", o_brute, "cross-check by enumeration (n <= 2)");
    orders->add_flag("--structure", o_struct, "group structure by enumeration (n <= 2)");

    // sieve
    auto* sieve = app.add_subcommand("sieve", "sieve certificates");
    std::string s_case;
    unsigned s_ell = 0;
    bool s_opt = false;
    double s_alpha = 0, s_t1 = 0, s_t2 = 0, s_d1 = 0, s_d2 = 0, s_lam = 0;
    sieve->add_option("--case", s_case, "cm-pair, cm-ell, cm-p5, noncm-omega, noncm-Omega")->required();
    sieve->add_option("--ell", s_ell, "prime ell for the cm-ell and non-CM cases");
    sieve->add_flag("--optimize", s_opt, "search parameters for the smallest bound");
    sieve->add_option("--alpha", s_alpha);
    sieve->add_option("--theta1", s_t1);
    sieve->add_option("--theta2", s_t2);
    sieve->add_option("--delta1", s_d1);
    sieve->add_option("--delta2", s_d2);
    sieve->add_option("--lambda", s_lam);

    // gl2
    auto* gl2 = app.add_subcommand("gl2", "conjugacy counts in GL2(Z/qZ)");
    unsigned g_ell = 3;
    u64 g_q = 0;
    bool g_square = false;
    std::string g_iq = "1", g_me, g_x;
    std::vector<i64> g_curve{1, 1};
    gl2->add_option("--ell", g_ell);
    gl2->add_option("--q", g_q)->required();
    gl2->add_flag("--square", g_square, "also count C_{q^2}");
    gl2->add_option("--iq", g_iq, "i_q used when ell | q + 1");
    gl2->add_option("--me", g_me, "compute c_E for this M_E");
    gl2->add_option("--curve", g_curve, "A B of y^2 = x^3 + A x + B")->expected(2);
    gl2->add_option("--x", g_x, "run the Chebotarev census up to x");

    // constants
    auto* consts = app.add_subcommand("constants", "Euler products, densities, F and f");
    std::string k_which, k_cutoff = "1e6";
    unsigned k_ell = 3;
    double k_s1 = 0, k_s2 = 0;
    u64 k_d1 = 1, k_d2 = 1;
    consts->add_option("--which", k_which,
                       "c-pair, c-ell, v-ratio, F, f, F-vec, f-vec, h, h-star, g, n-ell, d-E")
        ->required();
    consts->add_option("--cutoff", k_cutoff, "Euler product cutoff, or x for d-E");
    consts->add_option("--ell", k_ell);
    consts->add_option("--s", k_s1);
    consts->add_option("--s2", k_s2);
    consts->add_option("--d1,--d", k_d1);
    consts->add_option("--d2", k_d2);

    // verify
    auto* ver = app.add_subcommand("verify", "invariant suite");
    bool v_quick = false, v_full = false;
    std::uint64_t v_seed = 20240601;
    ver->add_flag("--quick", v_quick, "reduced ranges (default)");
    ver->add_flag("--full", v_full, "full ranges");
    ver->add_option("--seed", v_seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kArgs;
    }
    if (!replay_in.empty()) return replay(replay_in);
    if (app.get_subcommands().empty()) {
        std::cerr << app.help();
        return kArgs;
    }

    Manifest m;
    m.argv.assign(argv, argv + argc);
    m.argv[0] = "cmsieve";
    auto t0 = std::chrono::steady_clock::now();
    int rc = kOk;
    if (census->parsed()) {
        m.subcommand = "census";
        rc = cmd_census(c_x, c_ells, c_z1, c_z2, c_seps, c_cache, c_nocache, c_csv, c_summary, threads, c_struct, m);
    } else if (orders->parsed()) {
        m.subcommand = "orders";
        rc = cmd_orders(o_p, o_to, o_ells, o_ns, o_brute, o_struct, m);
    } else if (sieve->parsed()) {
        m.subcommand = "sieve";
        rc = cmd_sieve(s_case, s_ell, s_opt, s_alpha, s_t1, s_t2, s_d1, s_d2, s_lam, m);
    } else if (gl2->parsed()) {
        m.subcommand = "gl2";
        rc = cmd_gl2(g_ell, g_q, g_square, g_iq, g_me, g_curve[0], g_curve[1], g_x, m);
    } else if (consts->parsed()) {
        m.subcommand = "constants";
        rc = cmd_constants(k_which, k_cutoff, k_ell, k_s1, k_s2, k_d1, k_d2, m);
    } else if (ver->parsed()) {
        m.subcommand = "verify";
        if (v_quick && v_full) throw ArgError("--quick and --full are exclusive");
        rc = cmd_verify(v_full, v_seed, m);
    }
    m.wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!manifest_out.empty()) write_text(manifest_out, m.to_json().dump(2) + "\n");
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ArgError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kArgs;
    } catch (const CacheError& e) {
        std::cerr << "cache error: " << e.what() << "\n";
        return kCache;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kArgs;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kArgs;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kVerifyFail;
    }
}
