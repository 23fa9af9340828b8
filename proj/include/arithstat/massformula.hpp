#pragma once

#include <vector>

#include "arithstat/arith.hpp"

namespace arithstat {

// Partitions of k into at most m parts.
BigInt partitions_at_most(int k, int m);

// Sum_{k=0}^{n-1} q(k, n-k) p^{-k}.
Rational local_mass(int n, u64 p);

// d_p = sum_k coeffs[k] p^{-k}.
struct LocalDensityTable {
    int n = 0;
    std::vector<BigInt> coeffs;

    Rational at(u64 p) const;
};
LocalDensityTable local_density(int n);

struct ConstantEstimate {
    double value = 0;  // 1/2 * d_inf * prod_{p <= P} d_p
    double lower = 0;  // interval for the full product
    double upper = 0;
    u64 prime_cutoff = 0;
};
ConstantEstimate field_count_constant(int n, u64 prime_cutoff);

// zeta(3) by partial sum plus Euler-Maclaurin tail; error below 1e-15.
double zeta3();

}  // namespace arithstat
