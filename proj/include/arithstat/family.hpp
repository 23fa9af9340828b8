#pragma once

// Shared bookkeeping for enumerated families: per-prime histograms of
// splitting symbols and density reports built from them.

#include <map>
#include <string>
#include <vector>

#include "arithstat/arith.hpp"
#include "arithstat/symbols.hpp"

namespace arithstat {

constexpr u64 kDefaultPrimeCache = 997;

// Streaming summary of a family: size, conductor statistics and, for each
// cached prime, how many members have each splitting symbol there.
struct FamilyStats {
    int degree = 0;
    std::vector<u64> primes;
    u64 count = 0;
    long double sum_log_conductor = 0;
    std::vector<std::vector<u64>> hist;  // [prime index][symbol code]

    FamilyStats() = default;
    FamilyStats(int deg, u64 pmax);
    FamilyStats(int deg, std::vector<u64> prime_list);

    void add(long double log_conductor, const SymbolCode* codes);
    void merge(const FamilyStats& other);
    int prime_index(u64 p) const;  // -1 if not cached
    double mean_log_conductor() const;
};

struct DensityReport {
    std::string family;
    std::string x;
    u64 p = 0;
    int degree = 0;
    std::map<std::string, u64> counts;  // cycle type text or "ramified"
    u64 total = 0;
    std::map<std::string, Rational> empirical;
    std::map<std::string, Rational> predicted;
    std::map<std::string, double> z_scores;  // (empirical - predicted) / binomial sigma
    Rational t_empirical = 0;
    Rational t_predicted = 0;
};

// predicted maps cycle-type text to c_{p,tau}; "ramified" gets 1 - sum.
DensityReport density_from_stats(const FamilyStats& stats, u64 p, const std::map<std::string, Rational>& predicted,
                                 const std::string& family, const std::string& x);

}  // namespace arithstat
