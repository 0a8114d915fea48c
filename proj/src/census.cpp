#include "cmsieve/census.hpp"

#include "cmsieve/sieve_numerics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace cmsieve {

const std::vector<std::string> kCensusKeys = {"T1.2-omega", "T1.2-P5",        "T1.3-pair", "T1.3-P10",
                                              "T1.4-structure", "T1.5-cyclic", "S-epsilon"};

const char* const kCacheHeader =
    "p,a_p,pi_re,pi_im,A1,A2,omega_A1,Omega_A1,omega_A2,Omega_A2,gcd_A1_A2,struct_d1,struct_e1,struct_d2,struct_e2";

void validate(const CensusConfig& cfg) {
    if (!(cfg.z2_exp > 0 && cfg.z2_exp <= cfg.z1_exp && cfg.z1_exp < Rational(1, 2)))
        throw std::invalid_argument("need 0 < z2_exp <= z1_exp < 1/2");
    if (!(cfg.s_eps_exp > 0 && cfg.s_eps_exp < Rational(1, 8)))
        throw std::invalid_argument("need 0 < s_eps_exp < 1/8");
    for (unsigned l : cfg.ell_list)
        if (l < 3 || !is_prime_u64(l)) throw std::invalid_argument("ell_list entries must be odd primes");
    if (cfg.x > 4000000000ULL) throw std::invalid_argument("x too large");
}

CacheError::CacheError(const std::string& path, std::size_t line, const std::string& what)
    : std::runtime_error(path + ":" + std::to_string(line) + ": " + what), line_(line) {}

// --- rows ---

CensusRow compute_row(u64 p, const std::vector<unsigned>& ells, u64 struct_bound) {
    CensusRow r;
    r.rec = make_order_record(p, ells);
    if (p <= struct_bound) {
        r.s1 = group_structure(p, 1);
        r.s2 = group_structure(p, 2);
        r.struct_checked = true;
    }
    return r;
}

std::string format_row(const CensusRow& r) {
    const auto& o = r.rec;
    std::ostringstream s;
    s << o.p << ',' << o.a_p << ',' << o.pi.re << ',' << o.pi.im << ',' << o.A1 << ',' << o.A2 << ','
      << o.f1.omega << ',' << o.f1.Omega << ',' << o.f2.omega << ',' << o.f2.Omega << ',' << o.gcd12 << ',';
    if (r.struct_checked)
        s << r.s1.d << ',' << r.s1.e << ',' << r.s2.d << ',' << r.s2.e;
    else
        s << ",,,";
    return s.str();
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

BigInt parse_int(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty field");
    size_t i = (s[0] == '-') ? 1 : 0;
    if (i == s.size()) throw std::invalid_argument("bad integer");
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("bad integer '" + s + "'");
    return BigInt(s);
}

u64 to_u64(const BigInt& v) {
    if (v < 0 || v > BigInt("18446744073709551615")) throw std::invalid_argument("out of range");
    return std::stoull(v.get_str());
}

CensusRow parse_row(const std::string& line, const std::vector<unsigned>& ells) {
    auto f = split_csv(line);
    if (f.size() != 15) throw std::invalid_argument("expected 15 fields, got " + std::to_string(f.size()));
    CensusRow r;
    auto& o = r.rec;
    o.p = to_u64(parse_int(f[0]));
    o.a_p = std::stoll(parse_int(f[1]).get_str());
    o.pi = GaussInt(parse_int(f[2]), parse_int(f[3]));
    o.A1 = parse_int(f[4]);
    o.A2 = parse_int(f[5]);
    const BigInt p = (unsigned long)o.p;
    if (o.p % 4 != 1 || !is_prime_u64(o.p)) throw std::invalid_argument("p is not a split prime");
    if (o.pi.norm() != p) throw std::invalid_argument("N(pi) != p");
    if (2 * o.pi.re != o.a_p) throw std::invalid_argument("2 re(pi) != a_p");
    if (!is_primary(o.pi)) throw std::invalid_argument("pi not primary");
    if (8 * o.A1 != p + 1 - o.a_p) throw std::invalid_argument("8 A1 != p + 1 - a_p");
    if (4 * o.A2 != p + 1 + o.a_p) throw std::invalid_argument("4 A2 != p + 1 + a_p");
    // factor statistics are recomputed and must agree with the stored ones
    o.f1 = factor_stats(o.A1);
    o.f2 = factor_stats(o.A2);
    if (BigInt(o.f1.omega) != parse_int(f[6]) || BigInt(o.f1.Omega) != parse_int(f[7]) ||
        BigInt(o.f2.omega) != parse_int(f[8]) || BigInt(o.f2.Omega) != parse_int(f[9]))
        throw std::invalid_argument("factor counts disagree with A1, A2");
    mpz_gcd(o.gcd12.get_mpz_t(), o.A1.get_mpz_t(), o.A2.get_mpz_t());
    if (o.gcd12 != parse_int(f[10])) throw std::invalid_argument("gcd field wrong");
    for (unsigned l : ells) {
        o.A_ell[l] = cyclotomic_norm_from_trace(o.a_p, o.p, l);
        o.f_ell[l] = factor_stats(o.A_ell[l]);
    }
    int filled = 0;
    for (int i = 11; i < 15; ++i) filled += !f[i].empty();
    const bool any = filled > 0, all = filled == 4;
    if (any && !all) throw std::invalid_argument("partial structure fields");
    if (all) {
        r.struct_checked = true;
        r.s1 = {to_u64(parse_int(f[11])), to_u64(parse_int(f[12]))};
        r.s2 = {to_u64(parse_int(f[13])), to_u64(parse_int(f[14]))};
        if (BigInt((unsigned long)r.s1.d) * (unsigned long)r.s1.e != 8 * o.A1)
            throw std::invalid_argument("d1 e1 != |E(F_p)|");
        if (BigInt((unsigned long)r.s2.d) * (unsigned long)r.s2.e != 32 * o.A1 * o.A2)
            throw std::invalid_argument("d2 e2 != |E(F_p^2)|");
    }
    return r;
}

}  // namespace

std::vector<CensusRow> load_cache(const std::string& path, const std::vector<unsigned>& ells) {
    std::vector<CensusRow> rows;
    std::ifstream in(path);
    if (!in) return rows;
    std::string line;
    std::size_t ln = 0;
    if (!std::getline(in, line)) return rows;  // empty file
    ++ln;
    if (line != kCacheHeader) throw CacheError(path, ln, "bad header");
    u64 last = 0;
    while (std::getline(in, line)) {
        ++ln;
        if (line.empty()) continue;
        CensusRow r;
        try {
            r = parse_row(line, ells);
        } catch (const std::exception& e) {
            throw CacheError(path, ln, e.what());
        }
        if (r.rec.p <= last) throw CacheError(path, ln, "rows not strictly ascending in p");
        last = r.rec.p;
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_csv(const std::string& path, const std::vector<CensusRow>& rows) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << kCacheHeader << '\n';
    for (const auto& r : rows) out << format_row(r) << '\n';
}

// --- predicates ---

bool pred_omega(const CensusRow& r, const std::map<unsigned, long>& n_ell) {
    for (const auto& [l, n] : n_ell) {
        auto it = r.rec.f_ell.find(l);
        if (it == r.rec.f_ell.end() || it->second.Omega > n) return false;
    }
    return true;
}

bool pred_p5(const CensusRow& r, long bound) { return r.rec.f2.squarefree && r.rec.f2.omega <= bound; }

namespace {
// P_k(z): square-free, every prime factor > z.  The count condition is checked by the caller.
bool all_above(const FactorStats& s, double z) {
    return s.squarefree && (s.smallest == 0 || s.smallest.get_d() > z);
}
}  // namespace

bool pred_pair(const CensusRow& r, double z1, double z2) {
    const auto& o = r.rec;
    if (!all_above(o.f1, z1) || !all_above(o.f2, z2)) return false;
    // some 1 <= k <= 9 with omega1 <= k and omega2 <= 10 - k
    if (o.f1.omega > 9 || o.f2.omega > 9 || o.f1.omega + o.f2.omega > 10) return false;
    return o.gcd12 == 1;
}

bool pred_p10(const CensusRow& r) {
    const auto& o = r.rec;
    return o.f1.squarefree && o.f2.squarefree && o.gcd12 == 1 && o.f1.omega + o.f2.omega <= 10;
}

bool pred_structure(const CensusRow& r) {
    if (!r.struct_checked || !pred_p10(r)) return false;
    const auto& o = r.rec;
    return r.s1.d == 2 && BigInt((unsigned long)r.s1.e) == 4 * o.A1 && r.s2.d == 4 &&
           BigInt((unsigned long)r.s2.e) == 8 * o.A1 * o.A2;
}

bool pred_cyclic(const CensusRow& r) { return r.struct_checked && r.s1.d <= 12 && r.s2.d <= 12; }

// --- census ---

CensusTable run_census(const CensusConfig& cfg) {
    validate(cfg);
    CensusTable t;
    t.x = cfg.x;
    for (const auto& k : kCensusKeys) t.witnesses[k];

    std::vector<CensusRow> cached;
    if (!cfg.cache_path.empty()) cached = load_cache(cfg.cache_path, cfg.ell_list);
    const u64 cached_max = cached.empty() ? 0 : cached.back().rec.p;

    for (auto& r : cached) {
        if (r.rec.p > cfg.x) break;
        // rows cached without structure are completed in memory only
        if (!r.struct_checked && r.rec.p <= cfg.struct_bound) {
            r.s1 = group_structure(r.rec.p, 1);
            r.s2 = group_structure(r.rec.p, 2);
            r.struct_checked = true;
        }
        t.rows.push_back(r);
    }
    t.rows_from_cache = t.rows.size();

    std::vector<u64> todo;
    if (cfg.x > cached_max && cfg.x >= 5) {
        for (u64 p : primes_upto((std::uint32_t)cfg.x))
            if (p > cached_max && p % 4 == 1) todo.push_back(p);
    }

    std::vector<CensusRow> fresh(todo.size());
    unsigned nthreads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    nthreads = std::min<unsigned>(nthreads, std::max<size_t>(1, todo.size()));
    {
        const size_t block = std::max<size_t>(1, std::min<size_t>(256, todo.size() / (16 * nthreads)));
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        std::exception_ptr err;
        std::mutex err_mu;
        auto work = [&] {
            try {
                for (;;) {
                    size_t lo = next.fetch_add(block);
                    if (lo >= todo.size()) break;
                    size_t hi = std::min(todo.size(), lo + block);
                    for (size_t i = lo; i < hi; ++i) fresh[i] = compute_row(todo[i], cfg.ell_list, cfg.struct_bound);
                }
            } catch (...) {
                std::lock_guard<std::mutex> g(err_mu);
                if (!err) err = std::current_exception();
            }
        };
        for (unsigned i = 1; i < nthreads; ++i) pool.emplace_back(work);
        work();
        for (auto& th : pool) th.join();
        if (err) std::rethrow_exception(err);
    }

    if (!cfg.cache_path.empty() && !fresh.empty()) {
        std::ifstream probe(cfg.cache_path);
        bool has_header = probe && probe.peek() != std::ifstream::traits_type::eof();
        probe.close();
        std::ofstream out(cfg.cache_path, std::ios::app);
        if (!out) throw std::runtime_error("cannot append to " + cfg.cache_path);
        if (!has_header) out << kCacheHeader << '\n';
        for (const auto& r : fresh) out << format_row(r) << '\n';
    }
    t.rows_appended = fresh.size();
    for (auto& r : fresh) t.rows.push_back(std::move(r));

    for (unsigned l : cfg.ell_list) t.n_ell[l] = bound_table(BoundCase::CMEll, l);
    const long p5 = bound_table(BoundCase::CMP5);
    const double lx = std::log((double)std::max<u64>(cfg.x, 2));
    const double z1 = std::exp(lx * cfg.z1_exp.get_d());
    const double z2 = std::exp(lx * cfg.z2_exp.get_d());
    const double ze = std::exp(lx * cfg.s_eps_exp.get_d());

    for (unsigned l : cfg.ell_list) t.omega_by_ell[l] = 0;
    for (const auto& r : t.rows) {
        const u64 p = r.rec.p;
        for (const auto& [l, n] : t.n_ell)
            if (r.rec.f_ell.at(l).Omega <= n) ++t.omega_by_ell[l];
        if (pred_omega(r, t.n_ell)) t.witnesses["T1.2-omega"].push_back(p);
        if (pred_p5(r, p5)) t.witnesses["T1.2-P5"].push_back(p);
        if (pred_pair(r, z1, z2)) t.witnesses["T1.3-pair"].push_back(p);
        if (pred_p10(r)) t.witnesses["T1.3-P10"].push_back(p);
        if (r.struct_checked) {
            if (pred_structure(r)) t.witnesses["T1.4-structure"].push_back(p);
            if (pred_cyclic(r)) t.witnesses["T1.5-cyclic"].push_back(p);
            ++t.index_dist_p[r.s1.d];
            ++t.index_dist_p2[r.s2.d];
        } else {
            ++t.struct_unchecked;
        }
        if (s_epsilon_member(p, ze, ze)) t.witnesses["S-epsilon"].push_back(p);
    }
    for (const auto& [k, v] : t.witnesses) t.counters[k] = v.size();
    return t;
}

// --- proof-level checks ---

bool verify_coprimality(u64 p) {
    if (p % 4 != 1) throw std::invalid_argument("p must be 1 mod 4");
    const GaussInt pi = frobenius(p).pi;
    const GaussInt a = exact_div(pi - GaussInt(1, 0), GaussInt(2, 2));
    const GaussInt b = exact_div(pi + GaussInt(1, 0), GaussInt(2, 0));
    return gauss_gcd(a, b) == GaussInt(1, 0);
}

std::vector<u64> common_factor_witness(u64 p) {
    if (p % 4 != 1) throw std::invalid_argument("p must be 1 mod 4");
    OrderRecord r = make_order_record(p, {});
    std::vector<u64> out;
    if (r.gcd12 == 1) return out;
    for (const auto& pe : factor(r.gcd12))
        if (pe.p > 3) out.push_back(to_u64(pe.p));
    return out;
}

bool s_epsilon_member(u64 p, double z1, double z2) {
    if (p % 2 == 0) throw std::invalid_argument("p must be odd");
    if (p % 8 != 5 || p % 9 != 5) return false;
    auto ok = [](u64 n, double z) {
        for (auto [q, e] : factor_u64(n)) {
            if (q <= 3) continue;
            if (e > 1 || (double)q <= z) return false;
        }
        return true;
    };
    return ok(p - 1, z1) && ok(p + 1, z2);
}

PiCount pi_prime_count(unsigned k, const SquareFreeIdeal& a, const GaussInt& alpha, u64 y) {
    // fold a ramified factor of a into the power of 1+i
    std::vector<PrimeIdeal> odd;
    for (const auto& f : a.factors()) {
        if (f.tag == PrimeTag::Ramified)
            ++k;
        else
            odd.push_back(f);
    }
    const SquareFreeIdeal ao(odd);
    const GaussInt mod = pow(GaussInt(1, 1), k) * ao.generator();
    if (mod.is_unit()) {
        // everything is congruent mod the unit ideal
    } else if (alpha.is_zero() || !gauss_gcd(alpha, mod).is_unit()) {
        throw std::invalid_argument("alpha is not invertible modulo I");
    }

    PiCount out;
    out.phi = ideal_phi(ao) * (k ? BigInt(1) << (k - 1) : BigInt(1));
    out.expected = 4.0 * li((double)y) / out.phi.get_d();
    if (y < 2) return out;

    static const GaussInt units[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    auto hit = [&](const GaussInt& pi) {
        for (const auto& u : units)
            if (divides(mod, u * pi - alpha)) return true;
        return false;
    };
    if (hit(GaussInt(1, 1))) ++out.count;
    for_each_primary_prime(5, y, [&](u64, const GaussInt& pi) {
        if (hit(pi)) ++out.count;
        if (hit(pi.conj())) ++out.count;
    });
    return out;
}

}  // namespace cmsieve
