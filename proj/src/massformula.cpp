#include "arithstat/massformula.hpp"

#include <cmath>

#include "arithstat/conjugacy.hpp"

namespace arithstat {

BigInt partitions_at_most(int k, int m) {
    if (k < 0 || m < 0) return 0;
    // table[j] = partitions of j into parts of size <= m (conjugate count)
    std::vector<BigInt> table(k + 1, 0);
    table[0] = 1;
    for (int part = 1; part <= m; ++part) {
        for (int j = part; j <= k; ++j) table[j] += table[j - part];
    }
    return table[k];
}

Rational local_mass(int n, u64 p) {
    if (n < 1 || n > 8) fail(ErrorKind::InvalidArgument, "degree must lie in [1, 8]");
    Rational s = 0;
    Rational pk = 1;
    for (int k = 0; k < n; ++k) {
        s += Rational(partitions_at_most(k, n - k)) / pk;
        pk *= p;
    }
    return s;
}

Rational LocalDensityTable::at(u64 p) const {
    Rational s = 0;
    Rational pk = 1;
    for (auto& c : coeffs) {
        s += Rational(c) / pk;
        pk *= p;
    }
    return s;
}

LocalDensityTable local_density(int n) {
    if (n < 1 || n > 8) fail(ErrorKind::InvalidArgument, "degree must lie in [1, 8]");
    LocalDensityTable t;
    t.n = n;
    for (int k = 0; k <= n; ++k) t.coeffs.push_back(partitions_at_most(k, n - k) - partitions_at_most(k - 1, n - k + 1));
    return t;
}

ConstantEstimate field_count_constant(int n, u64 prime_cutoff) {
    if (prime_cutoff < 100) fail(ErrorKind::InvalidArgument, "prime cutoff must be at least 100");
    auto table = local_density(n);
    std::vector<double> c;
    for (auto& v : table.coeffs) c.push_back(v.convert_to<double>());
    double log_prod = 0;
    for (u64 p : primes_up_to(prime_cutoff)) {
        double inv = 1.0 / static_cast<double>(p), pk = 1, d = 0;
        for (double ck : c) {
            d += ck * pk;
            pk *= inv;
        }
        log_prod += std::log(d);
    }
    // For n <= 8, d_p = 1 + c_2 p^-2 + ... with |c_2| <= 1 and the remaining
    // coefficients small, so |log d_p| <= 2 p^-2 once p > 100.  Summing over
    // p > P is bounded by sum_{m > P} 2 m^-2 < 2 / P.
    double tail = 2.0 / static_cast<double>(prime_cutoff);
    double front = 0.5 * two_torsion_proportion(n).convert_to<double>();
    ConstantEstimate e;
    e.prime_cutoff = prime_cutoff;
    e.value = front * std::exp(log_prod);
    e.lower = front * std::exp(log_prod - tail);
    e.upper = front * std::exp(log_prod + tail);
    return e;
}

double zeta3() {
    const int K = 2000;
    long double s = 0;
    for (int k = K; k >= 1; --k) {
        long double kk = k;
        s += 1.0L / (kk * kk * kk);
    }
    long double k = K;
    s += 1.0L / (2 * k * k) - 1.0L / (2 * k * k * k) + 1.0L / (4 * k * k * k * k);
    return static_cast<double>(s);
}

}  // namespace arithstat
