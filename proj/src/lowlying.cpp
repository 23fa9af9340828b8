#include "arithstat/lowlying.hpp"

#include <cmath>

#include "arithstat/polyfactor.hpp"

namespace arithstat {

TestFunction::TestFunction(double s) : sigma(s) {
    if (!(s > 0) || s > kMaxSigma) fail(ErrorKind::InvalidArgument, "sigma must lie in (0, 0.45]");
}

double TestFunction::f(double y) const {
    double t = M_PI * sigma * y;
    if (std::fabs(t) < 1e-8) return sigma;
    double s = std::sin(t) / t;
    return sigma * s * s;
}

double TestFunction::fhat(double u) const { return std::max(0.0, 1 - std::fabs(u) / sigma); }

double TestFunction::fhat_numeric(double u) const {
    // Simpson on [-Y, Y] with Y a whole number of periods of sin^2, plus the
    // non-oscillating part of the tail: f = (1 - cos 2 pi sigma y) / (2 pi^2 sigma y^2).
    const double periods = 5000;
    const double Y = periods / sigma;
    const long n = static_cast<long>(periods) * 80;  // even
    const double h = 2 * Y / n;
    double acc = 0;
    for (long i = 0; i <= n; ++i) {
        double y = -Y + i * h;
        double w = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
        acc += w * f(y) * std::cos(2 * M_PI * u * y);
    }
    acc *= h / 3;
    // 2 int_Y^inf [cos(2 pi u y) - cos(2 pi (u+sigma) y)/2 - cos(2 pi (u-sigma) y)/2] / (2 pi^2 sigma y^2)
    auto flat = [&](double w) { return std::fabs(w) < 1e-12 ? 1 / Y : 0.0; };
    acc += 2 * (flat(u) - flat(u + sigma) / 2 - flat(u - sigma) / 2) / (2 * M_PI * M_PI * sigma);
    return acc;
}

int default_theta(const SplittingSymbol& s, int k) { return theta_coefficient(s, k); }

std::string to_string(Symmetry s) { return s == Symmetry::Sp ? "Sp" : "SO"; }

Symmetry parse_symmetry(const std::string& text) {
    std::string t;
    for (char c : text) t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (t == "sp") return Symmetry::Sp;
    if (t == "so") return Symmetry::SO;
    fail(ErrorKind::InvalidArgument, "symmetry must be sp or so");
}

double average_log_conductor(const FamilyStats& stats) { return stats.mean_log_conductor(); }

double average_log_conductor(const std::vector<BigInt>& conductors) {
    if (conductors.empty()) fail(ErrorKind::EmptyFamily, "empty family");
    long double s = 0;
    for (auto& c : conductors) {
        if (c <= 0) fail(ErrorKind::InvalidArgument, "conductors must be positive");
        s += std::log(c.convert_to<long double>());
    }
    return static_cast<double>(s / conductors.size());
}

PrimeSums prime_sums(const FamilyStats& stats, const TestFunction& tf, const ThetaFn& theta) {
    const double L = stats.mean_log_conductor();
    PrimeSums out;
    out.cutoff = std::exp(tf.sigma * L);
    if (out.cutoff >= 2) {
        u64 top = stats.primes.empty() ? 1 : stats.primes.back();
        for (u64 q = top + 1; static_cast<double>(q) <= out.cutoff; ++q) {
            if (is_prime_u64(q)) {
                fail(ErrorKind::InsufficientPrimeCache,
                     "prime cache ends at " + std::to_string(top) + " but the sums reach " + std::to_string(q));
            }
        }
    }
    const double scale = 2.0 / (L * static_cast<double>(stats.count));
    for (size_t i = 0; i < stats.primes.size(); ++i) {
        const u64 p = stats.primes[i];
        const double lp = std::log(static_cast<double>(p));
        double s1 = 0;
        for (int k = 1; std::pow(static_cast<double>(p), k) <= out.cutoff; ++k) {
            const double w = scale * lp / std::pow(static_cast<double>(p), k / 2.0) * tf.fhat(k * lp / L);
            double unram = 0, ram = 0;
            for (size_t code = 0; code < stats.hist[i].size(); ++code) {
                u64 c = stats.hist[i][code];
                if (!c) continue;
                const SplittingSymbol& s = symbol_of_code(static_cast<SymbolCode>(code));
                double t = static_cast<double>(c) * theta(s, k);
                (s.unramified() ? unram : ram) += t;
            }
            if (k == 1) {
                out.S1 += w * unram;
                s1 = w * unram;
            } else if (k == 2) {
                out.S2 += w * unram;
            } else {
                out.S3 += w * unram;
            }
            out.S_ram += w * ram;
        }
        if (static_cast<double>(p) <= out.cutoff) out.s1_by_prime.emplace_back(p, s1);
    }
    return out;
}

OneLevelReport one_level_density(const FamilyStats& stats, double sigma, Symmetry symmetry, const std::string& x,
                                 const ThetaFn& theta) {
    TestFunction tf(sigma);
    OneLevelReport r;
    r.x = x;
    r.sigma = sigma;
    r.L = stats.mean_log_conductor();
    r.family_size = stats.count;
    r.sums = prime_sums(stats, tf, theta);
    r.D = tf.fhat(0) - (r.sums.S1 + r.sums.S2 + r.sums.S3 + r.sums.S_ram);
    r.symmetry = symmetry;
    r.target = symmetry == Symmetry::Sp ? 1 - sigma / 2 : 1 + sigma / 2;
    return r;
}

}  // namespace arithstat
