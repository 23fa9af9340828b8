#include "arithstat/family.hpp"

#include <algorithm>
#include <cmath>

#include "arithstat/conjugacy.hpp"

namespace arithstat {

FamilyStats::FamilyStats(int deg, u64 pmax) : FamilyStats(deg, primes_up_to(pmax)) {}

FamilyStats::FamilyStats(int deg, std::vector<u64> prime_list) : degree(deg), primes(std::move(prime_list)) {
    hist.assign(primes.size(), std::vector<u64>(symbol_code_count(), 0));
}

void FamilyStats::add(long double log_conductor, const SymbolCode* codes) {
    ++count;
    sum_log_conductor += log_conductor;
    for (size_t i = 0; i < primes.size(); ++i) ++hist[i][codes[i]];
}

void FamilyStats::merge(const FamilyStats& other) {
    if (other.primes != primes) fail(ErrorKind::InvalidArgument, "merging stats over different primes");
    count += other.count;
    sum_log_conductor += other.sum_log_conductor;
    for (size_t i = 0; i < hist.size(); ++i) {
        for (size_t j = 0; j < hist[i].size(); ++j) hist[i][j] += other.hist[i][j];
    }
}

int FamilyStats::prime_index(u64 p) const {
    auto it = std::lower_bound(primes.begin(), primes.end(), p);
    if (it == primes.end() || *it != p) return -1;
    return static_cast<int>(it - primes.begin());
}

double FamilyStats::mean_log_conductor() const {
    if (count == 0) fail(ErrorKind::EmptyFamily, "empty family");
    return static_cast<double>(sum_log_conductor / count);
}

DensityReport density_from_stats(const FamilyStats& stats, u64 p, const std::map<std::string, Rational>& predicted,
                                 const std::string& family, const std::string& x) {
    int idx = stats.prime_index(p);
    if (idx < 0) fail(ErrorKind::InsufficientPrimeCache, "prime " + std::to_string(p) + " not in cache");
    if (stats.count == 0) fail(ErrorKind::EmptyFamily, "empty family");
    DensityReport r;
    r.family = family;
    r.x = x;
    r.p = p;
    r.degree = stats.degree;
    r.total = stats.count;
    for (auto& tau : partitions(stats.degree)) r.counts[tau.to_string()] = 0;
    r.counts["ramified"] = 0;
    for (size_t code = 0; code < stats.hist[idx].size(); ++code) {
        u64 c = stats.hist[idx][code];
        if (!c) continue;
        const SplittingSymbol& s = symbol_of_code(static_cast<SymbolCode>(code));
        if (s.degree() != stats.degree) fail(ErrorKind::InvalidArgument, "symbol degree mismatch in family stats");
        if (s.unramified()) {
            r.counts[s.cycle_type().to_string()] += c;
            r.t_empirical += Rational(c) * char_std(s.cycle_type());
        } else {
            r.counts["ramified"] += c;
        }
    }
    r.t_empirical /= stats.count;
    Rational unram = 0;
    for (auto& tau : partitions(stats.degree)) {
        auto it = predicted.find(tau.to_string());
        if (it == predicted.end()) continue;
        r.predicted[tau.to_string()] = it->second;
        r.t_predicted += it->second * char_std(tau);
        unram += it->second;
    }
    r.predicted["ramified"] = 1 - unram;
    for (auto& [key, c] : r.counts) {
        r.empirical[key] = Rational(c, stats.count);
        auto it = r.predicted.find(key);
        if (it == r.predicted.end()) continue;
        double pr = it->second.convert_to<double>();
        double sigma = std::sqrt(pr * (1 - pr) / static_cast<double>(stats.count));
        double diff = r.empirical[key].convert_to<double>() - pr;
        r.z_scores[key] = sigma > 0 ? diff / sigma : (diff == 0 ? 0.0 : INFINITY);
    }
    return r;
}

}  // namespace arithstat
