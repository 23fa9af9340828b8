#pragma once

// Monic integer polynomials of degree n ordered by height, sieved to
// maximal orders, with per-prime splitting statistics.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arithstat/arith.hpp"
#include "arithstat/family.hpp"
#include "arithstat/polyfactor.hpp"
#include "arithstat/symbols.hpp"

namespace arithstat {

// Largest m >= 0 with m^k < x^i (the coefficient bound for a_i).
BigInt coefficient_bound(int n, int i, const BigInt& x);

// Every f with a_1 in [0, n) and h(f) < x, a_1 slowest, then a_2, ... ascending.
void enumerate_monic(int n, const BigInt& x, const std::function<void(const MonicPoly&)>& visit);
BigInt monic_box_size(int n, const BigInt& x);

struct FamilyRecord {
    u64 id = 0;  // position in enumeration order
    MonicPoly poly;
    BigInt conductor;
    std::vector<SymbolCode> splitting;  // aligned with the cache primes
    bool irreducible = false;
    bool maximal = false;
    bool fully_factored = false;
};

struct SieveCounters {
    u64 examined = 0;
    u64 zero_disc = 0;
    u64 reducible = 0;
    u64 nonmaximal = 0;
    u64 unresolved = 0;  // discriminant could not be factored far enough
    u64 kept = 0;

    void merge(const SieveCounters& o);
};

struct SieveOptions {
    u64 trial_bound = 1000000;
    bool squarefree_only = false;  // keep only squarefree discriminants
};

// The record for f if it survives the sieve; counters record why not.
std::optional<FamilyRecord> sieve_one(const MonicPoly& f, u64 id, const std::vector<u64>& primes,
                                      const SieveOptions& opt, SieveCounters& counters);

// Generic sieve over the whole box (any 2 <= n <= 5); the serial reference.
void sieve_maximal(int n, const BigInt& x, const std::vector<u64>& primes, const SieveOptions& opt,
                   const std::function<void(const FamilyRecord&)>& visit, SieveCounters& counters);

struct MonicRun {
    FamilyStats stats;
    SieveCounters counters;
};

struct MonicOptions {
    int n = 3;
    BigInt x = 1;
    u64 pmax = kDefaultPrimeCache;  // 0 disables splitting statistics
    SieveOptions sieve;
    bool parallel = true;
    bool use_kernel = true;  // the row kernel for n = 3; otherwise the generic sieve
    const std::function<void(const FamilyRecord&)>* visit = nullptr;  // every kept record, in order
};

// Streaming statistics for the whole family.  Aborts when more than 1e-4 of
// the candidates had unresolved discriminants.
MonicRun run_monic_family(const MonicOptions& opt);

// n = 3 row kernel: rows (a_1, a_2) in parallel, a_3 sieved by arithmetic
// progressions.  visit, when given, sees each record (serially, in order).
MonicRun monic_cubic_kernel(const BigInt& x, u64 pmax, bool parallel, bool squarefree_only = false,
                            const std::function<void(const FamilyRecord&)>* visit = nullptr);

// c_{p,tau} = exact_type_count(n,p,tau) / (p^n (1 - p^-2)), keyed by cycle type text.
std::map<std::string, Rational> monic_predicted(int n, u64 p);
DensityReport density_report(const FamilyStats& stats, u64 p, const std::string& x);

// Main term 2^{n-1} n / zeta(2) x^{(n+2)/(2n)}.
double monic_count_main_term(int n, double x);

}  // namespace arithstat
