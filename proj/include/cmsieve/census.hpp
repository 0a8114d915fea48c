#pragma once
// Prime-by-prime census of the almost-prime and group-structure predicates
// for y^2 = x^3 - x, with an append-only CSV cache.

#include "cmsieve/curve_orders.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace cmsieve {

struct CensusConfig {
    u64 x = 0;
    std::vector<unsigned> ell_list{3};
    Rational z1_exp{1, 30};
    Rational z2_exp{1, 31};
    // S-epsilon sifting exponent, 1/8 - epsilon.
    Rational s_eps_exp{1, 9};
    std::string cache_path;  // empty: no cache
    unsigned threads = 0;    // 0: hardware concurrency
    u64 struct_bound = 3000;
};

// Throws std::invalid_argument.
void validate(const CensusConfig& cfg);

struct CensusRow {
    OrderRecord rec;
    bool struct_checked = false;
    GroupStructure s1, s2;  // E(F_p), E(F_{p^2})
};

// Predicate ids, in report order.
extern const std::vector<std::string> kCensusKeys;

struct CensusTable {
    u64 x = 0;
    std::vector<CensusRow> rows;                         // split p <= x, ascending
    std::map<std::string, std::vector<u64>> witnesses;   // id -> primes
    std::map<std::string, u64> counters;                 // id -> witnesses[id].size()
    std::map<unsigned, long> n_ell;                      // thresholds used
    std::map<unsigned, u64> omega_by_ell;                // T1.2-omega per ell
    std::map<u64, u64> index_dist_p;                     // d1 -> count (checked rows)
    std::map<u64, u64> index_dist_p2;                    // d2 -> count
    u64 struct_unchecked = 0;
    u64 rows_from_cache = 0;
    u64 rows_appended = 0;
};

class CacheError : public std::runtime_error {
public:
    CacheError(const std::string& path, std::size_t line, const std::string& what);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

extern const char* const kCacheHeader;

// Loads and validates a cache file; a missing file yields no rows.  A_ell is
// recomputed for the given ells.
std::vector<CensusRow> load_cache(const std::string& path, const std::vector<unsigned>& ells = {});
std::string format_row(const CensusRow& r);
void write_csv(const std::string& path, const std::vector<CensusRow>& rows);

CensusRow compute_row(u64 p, const std::vector<unsigned>& ells, u64 struct_bound);

CensusTable run_census(const CensusConfig& cfg);

// Individual predicates; z values are real thresholds.
bool pred_omega(const CensusRow& r, const std::map<unsigned, long>& n_ell);
bool pred_p5(const CensusRow& r, long bound);
bool pred_pair(const CensusRow& r, double z1, double z2);
bool pred_p10(const CensusRow& r);
bool pred_structure(const CensusRow& r);  // false when unchecked
bool pred_cyclic(const CensusRow& r);     // false when unchecked

bool verify_coprimality(u64 p);
std::vector<u64> common_factor_witness(u64 p);

bool s_epsilon_member(u64 p, double z1, double z2);

struct PiCount {
    u64 count = 0;
    BigInt phi;           // Phi(I)
    double expected = 0;  // 4 li(y) / Phi(I)
};
// I = (1+i)^k * a.  Counts degree-one prime ideals of norm <= y having a
// generator congruent to alpha mod I.  Throws std::invalid_argument when alpha
// is not a unit mod I.
PiCount pi_prime_count(unsigned k, const SquareFreeIdeal& a, const GaussInt& alpha, u64 y);

}  // namespace cmsieve
