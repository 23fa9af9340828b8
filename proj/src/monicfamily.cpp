#include "arithstat/monicfamily.hpp"

#include <algorithm>
#include <cmath>

#include <omp.h>

#include "arithstat/massformula.hpp"

namespace arithstat {

SymbolCode cubic_code_unramified(i64 a, i64 b, i64 c, i64 d, i128 disc, u64 p);  // cubicforms.cpp

BigInt coefficient_bound(int n, int i, const BigInt& x) {
    if (x < 1) fail(ErrorKind::InvalidArgument, "height cutoff must be at least 1");
    const unsigned k = static_cast<unsigned>(n * (n - 1));
    const BigInt target = pow_big(x, static_cast<unsigned>(i));
    // largest m with m^k < target
    BigInt lo = 0, hi = 1;
    while (pow_big(hi, k) < target) hi *= 2;
    while (hi - lo > 1) {
        BigInt mid = (lo + hi) / 2;
        if (pow_big(mid, k) < target) lo = mid; else hi = mid;
    }
    return lo;
}

namespace {

std::vector<BigInt> all_bounds(int n, const BigInt& x) {
    if (n < 2 || n > 5) fail(ErrorKind::InvalidArgument, "degree must be between 2 and 5");
    std::vector<BigInt> b(n);
    for (int i = 1; i <= n; ++i) b[i - 1] = coefficient_bound(n, i, x);
    return b;
}

}  // namespace

BigInt monic_box_size(int n, const BigInt& x) {
    auto b = all_bounds(n, x);
    BigInt a1_count = std::min<BigInt>(BigInt(n), b[0] + 1);
    BigInt total = a1_count;
    for (int i = 1; i < n; ++i) total *= 2 * b[i] + 1;
    return total;
}

void enumerate_monic(int n, const BigInt& x, const std::function<void(const MonicPoly&)>& visit) {
    auto b = all_bounds(n, x);
    std::vector<BigInt> a(n);
    a[0] = 0;
    const BigInt a1_max = std::min<BigInt>(BigInt(n - 1), b[0]);
    for (int i = 1; i < n; ++i) a[i] = -b[i];
    while (true) {
        visit(MonicPoly(a));
        int i = n - 1;
        while (i >= 0) {
            BigInt top = i == 0 ? a1_max : b[i];
            if (a[i] < top) {
                ++a[i];
                break;
            }
            a[i] = i == 0 ? BigInt(0) : -b[i];
            --i;
        }
        if (i < 0) break;
    }
}

void SieveCounters::merge(const SieveCounters& o) {
    examined += o.examined;
    zero_disc += o.zero_disc;
    reducible += o.reducible;
    nonmaximal += o.nonmaximal;
    unresolved += o.unresolved;
    kept += o.kept;
}

std::optional<FamilyRecord> sieve_one(const MonicPoly& f, u64 id, const std::vector<u64>& primes,
                                      const SieveOptions& opt, SieveCounters& counters) {
    ++counters.examined;
    BigInt disc = discriminant_monic(f);
    if (disc == 0) {
        ++counters.zero_disc;
        return std::nullopt;
    }
    if (!is_irreducible_over_Q(f)) {
        ++counters.reducible;
        return std::nullopt;
    }
    SquareDivisors sq = square_divisor_primes(disc, opt.trial_bound);
    if (!sq.complete) {
        ++counters.unresolved;
        return std::nullopt;
    }
    if (opt.squarefree_only && !sq.primes.empty()) {
        ++counters.nonmaximal;
        return std::nullopt;
    }
    for (auto& p : sq.primes) {
        if (p > BigInt(std::numeric_limits<u64>::max())) {
            ++counters.unresolved;
            return std::nullopt;
        }
        if (!is_p_maximal(f, static_cast<u64>(p))) {
            ++counters.nonmaximal;
            return std::nullopt;
        }
    }
    FamilyRecord r;
    r.id = id;
    r.poly = f;
    r.conductor = abs(disc);
    r.irreducible = r.maximal = r.fully_factored = true;
    r.splitting.reserve(primes.size());
    for (u64 p : primes) r.splitting.push_back(symbol_code(splitting_symbol(f, p)));
    ++counters.kept;
    return r;
}

void sieve_maximal(int n, const BigInt& x, const std::vector<u64>& primes, const SieveOptions& opt,
                   const std::function<void(const FamilyRecord&)>& visit, SieveCounters& counters) {
    u64 id = 0;
    enumerate_monic(n, x, [&](const MonicPoly& f) {
        auto r = sieve_one(f, id++, primes, opt, counters);
        if (r) visit(*r);
    });
}

namespace {

long double log_abs(const BigInt& v) {
    // log|v| without overflowing long double for huge v
    BigInt a = abs(v);
    unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(a));
    if (bits < 60) return std::log(static_cast<long double>(a.convert_to<u64>()));
    BigInt top = a >> (bits - 60);
    return std::log(static_cast<long double>(top.convert_to<u64>())) + (bits - 60) * std::log(2.0L);
}

// Nonmaximal a_3 for the row (a1, a2): a multiple root r of f mod p needs
// f'(r) = 0 mod p, and then p^2 | f(r) for one (equivalently every) lift.
void mark_nonmaximal(i64 a1, i64 a2, i64 B, u64 p, std::vector<std::uint8_t>& mark) {
    std::vector<u64> roots;
    if (p <= 3) {
        for (u64 r = 0; r < p; ++r) {
            i64 v = 3 * static_cast<i64>(r * r) + 2 * a1 * static_cast<i64>(r) + a2;
            if (mod_signed(v, p) == 0) roots.push_back(r);
        }
    } else {
        // 3 r = -a1 +- s with s^2 = a1^2 - 3 a2
        u64 d = mod_signed128(static_cast<i128>(a1) * a1 - 3 * static_cast<i128>(a2), p);
        std::optional<u64> s;
        if (d == 0) {
            s = 0;
        } else if (legendre(d, p) == 1) {
            s = sqrt_mod_prime(d, p);
        }
        if (!s) return;
        u64 inv3 = invmod(3, p);
        u64 m1 = mod_signed(-a1, p);
        roots.push_back(mulmod((m1 + *s) % p, inv3, p));
        if (*s != 0) roots.push_back(mulmod((m1 + p - *s) % p, inv3, p));
    }
    const i128 p2 = static_cast<i128>(p) * p;
    for (u64 r : roots) {
        i128 rr = r;
        i128 val = ((rr + a1) * rr + a2) * rr;  // f(r) - a3
        i128 start = -val % p2;
        if (start < 0) start += p2;
        // smallest a3 >= -B with a3 = start mod p^2
        i128 first = -static_cast<i128>(B) + ((start + B) % p2 + p2) % p2;
        for (i128 a3 = first; a3 <= B; a3 += p2) {
            auto& m = mark[static_cast<size_t>(a3 + B)];
            if (!m) m = 2;
        }
    }
}

struct RowResult {
    u64 kept = 0, reducible = 0, nonmaximal = 0;
    long double sum_log = 0;
    std::vector<FamilyRecord> records;
};

}  // namespace

MonicRun monic_cubic_kernel(const BigInt& x, u64 pmax, bool parallel, bool squarefree_only,
                            const std::function<void(const FamilyRecord&)>* visit) {
    auto bounds = all_bounds(3, x);
    if (bounds[2] > BigInt(2000000000)) fail(ErrorKind::InvalidArgument, "cutoff too large for the cubic kernel");
    const i64 B1 = std::min<i64>(2, bounds[0].convert_to<i64>());
    const i64 B2 = bounds[1].convert_to<i64>();
    const i64 B3 = bounds[2].convert_to<i64>();
    const std::vector<u64> cache = pmax ? primes_up_to(pmax) : std::vector<u64>{};
    const i64 rows2 = 2 * B2 + 1;
    const i64 nrows = (B1 + 1) * rows2;
    // prime list reaching sqrt of the largest discriminant in the box
    long double dmax = 4.0L * B1 * B1 * B2 * B2 + 4.0L * B2 * B2 * B2 + 4.0L * B1 * B1 * B1 * B3 + 27.0L * B3 * B3 +
                       18.0L * B1 * B2 * B3 + 1;
    const std::vector<u64> sieve_primes = primes_up_to(static_cast<u64>(std::sqrt(dmax)) + 1);

    MonicRun run;
    run.stats = FamilyStats(3, cache);
    run.counters.examined = static_cast<u64>(nrows) * static_cast<u64>(2 * B3 + 1);
    const int nthreads = parallel ? omp_get_max_threads() : 1;
    std::vector<FamilyStats> local(nthreads, FamilyStats(3, cache));
    const bool keep_records = visit != nullptr;
    const i64 chunk = keep_records ? 64 : nrows;
    std::vector<SymbolCode> codes(cache.size());

    for (i64 base = 0; base < nrows; base += chunk) {
        const i64 end = std::min(nrows, base + chunk);
        std::vector<RowResult> rows(end - base);
#pragma omp parallel for schedule(dynamic, 1) num_threads(nthreads) if (parallel)
        for (i64 row = base; row < end; ++row) {
            const i64 a1 = row / rows2;
            const i64 a2 = row % rows2 - B2;
            RowResult& out = rows[row - base];
            FamilyStats& st = local[parallel ? omp_get_thread_num() : 0];
            std::vector<std::uint8_t> mark(2 * B3 + 1, 0);
            // rational roots r give a3 = -(r^3 + a1 r^2 + a2 r)
            const i64 R = a1 + static_cast<i64>(isqrt_u64(static_cast<u64>(std::abs(a2)))) +
                          static_cast<i64>(icbrt_u64(static_cast<u64>(B3))) + 2;
            for (i64 r = -R; r <= R; ++r) {
                i128 a3 = -((static_cast<i128>(r) + a1) * r + a2) * r;
                if (a3 >= -B3 && a3 <= B3) mark[static_cast<size_t>(a3 + B3)] = 1;
            }
            const long double A1 = a1, A2 = std::abs(a2), A3 = B3;
            const long double rowmax =
                A1 * A1 * A2 * A2 + 4 * A2 * A2 * A2 + 4 * A1 * A1 * A1 * A3 + 27 * A3 * A3 + 18 * A1 * A2 * A3;
            const u64 pbound = static_cast<u64>(std::sqrt(rowmax)) + 1;
            for (u64 p : sieve_primes) {
                if (p > pbound) break;
                if (squarefree_only) {
                    // any a3 with p^2 | disc: scan the residues mod p^2 once
                    const i128 p2 = static_cast<i128>(p) * p;
                    for (i128 t = 0; t < p2 && t <= 2 * B3; ++t) {
                        i128 a3 = -B3 + t;
                        i128 disc = static_cast<i128>(a1) * a1 * a2 * a2 - 4 * static_cast<i128>(a2) * a2 * a2 -
                                    4 * static_cast<i128>(a1) * a1 * a1 * a3 - 27 * a3 * a3 + 18 * static_cast<i128>(a1) * a2 * a3;
                        if (disc % p2 != 0) continue;
                        for (i128 v = a3; v <= B3; v += p2) {
                            auto& m = mark[static_cast<size_t>(v + B3)];
                            if (!m) m = 2;
                        }
                    }
                } else {
                    mark_nonmaximal(a1, a2, B3, p, mark);
                }
            }
            std::vector<SymbolCode> rc(cache.size());
            for (i64 a3 = -B3; a3 <= B3; ++a3) {
                std::uint8_t m = mark[static_cast<size_t>(a3 + B3)];
                if (m == 1) {
                    ++out.reducible;
                    continue;
                }
                if (m == 2) {
                    ++out.nonmaximal;
                    continue;
                }
                ++out.kept;
                i128 disc = static_cast<i128>(a1) * a1 * a2 * a2 - 4 * static_cast<i128>(a2) * a2 * a2 -
                            4 * static_cast<i128>(a1) * a1 * a1 * a3 - 27 * static_cast<i128>(a3) * a3 +
                            18 * static_cast<i128>(a1) * a2 * a3;
                long double lg = std::log(static_cast<long double>(disc < 0 ? -disc : disc));
                out.sum_log += lg;
                for (size_t i = 0; i < cache.size(); ++i) {
                    u64 p = cache[i];
                    if (mod_signed128(disc, p) != 0) {
                        rc[i] = cubic_code_unramified(1, a1, a2, a3, disc, p);
                    } else {
                        FpPoly g{mod_signed(a3, p), mod_signed(a2, p), mod_signed(a1, p), 1};
                        rc[i] = symbol_code(splitting_shape(g, p));
                    }
                }
                // the log sum is merged per row below; only the histogram goes here
                st.add(0, rc.data());
                if (keep_records) {
                    FamilyRecord rec;
                    rec.id = static_cast<u64>(row) * static_cast<u64>(2 * B3 + 1) + static_cast<u64>(a3 + B3);
                    rec.poly = MonicPoly({a1, a2, a3});
                    rec.conductor = BigInt(disc < 0 ? -disc : disc);
                    rec.splitting = rc;
                    rec.irreducible = rec.maximal = rec.fully_factored = true;
                    out.records.push_back(std::move(rec));
                }
            }
        }
        for (auto& r : rows) {
            run.counters.kept += r.kept;
            run.counters.reducible += r.reducible;
            run.counters.nonmaximal += r.nonmaximal;
            run.stats.sum_log_conductor += r.sum_log;
            if (visit) {
                for (auto& rec : r.records) (*visit)(rec);
            }
        }
    }
    long double logs = run.stats.sum_log_conductor;
    for (auto& st : local) run.stats.merge(st);
    run.stats.sum_log_conductor = logs;
    return run;
}

MonicRun run_monic_family(const MonicOptions& opt) {
    MonicRun run;
    if (opt.n == 3 && opt.use_kernel) {
        run = monic_cubic_kernel(opt.x, opt.pmax, opt.parallel, opt.sieve.squarefree_only, opt.visit);
    } else {
        const std::vector<u64> cache = opt.pmax ? primes_up_to(opt.pmax) : std::vector<u64>{};
        run.stats = FamilyStats(opt.n, cache);
        sieve_maximal(opt.n, opt.x, cache, opt.sieve,
                      [&](const FamilyRecord& r) {
                          run.stats.add(log_abs(r.conductor), r.splitting.data());
                          if (opt.visit) (*opt.visit)(r);
                      },
                      run.counters);
    }
    if (run.counters.examined && run.counters.unresolved * 10000 > run.counters.examined) {
        fail(ErrorKind::InsufficientPrecision, "too many discriminants left unfactored");
    }
    return run;
}

std::map<std::string, Rational> monic_predicted(int n, u64 p) {
    std::map<std::string, Rational> out;
    BigInt pn = pow_big(BigInt(p), static_cast<unsigned>(n));
    Rational denom = Rational(pn) * (Rational(1) - Rational(1, BigInt(p) * p));
    for (auto& tau : partitions(n)) out[tau.to_string()] = Rational(exact_type_count(n, p, tau)) / denom;
    return out;
}

DensityReport density_report(const FamilyStats& stats, u64 p, const std::string& x) {
    return density_from_stats(stats, p, monic_predicted(stats.degree, p), "monic", x);
}

double monic_count_main_term(int n, double x) {
    const double zeta2 = M_PI * M_PI / 6;
    return std::pow(2.0, n - 1) * n / zeta2 * std::pow(x, (n + 2.0) / (2.0 * n));
}

}  // namespace arithstat
