#include "arithstat/conjugacy.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace arithstat {

namespace {

void check_degree(int n) {
    if (n < 1 || n > 12) fail(ErrorKind::InvalidArgument, "degree must lie in [1, 12]");
}

}  // namespace

BigInt class_size(const CycleType& tau) {
    int n = tau.degree();
    BigInt denom = 1;
    for (int k = 1; k <= n; ++k) {
        int m = tau.multiplicity(k);
        if (!m) continue;
        denom *= pow_big(BigInt(k), static_cast<unsigned>(m)) * factorial(static_cast<unsigned>(m));
    }
    return factorial(static_cast<unsigned>(n)) / denom;
}

int char_std(const CycleType& tau) { return tau.fixed_points() - 1; }

std::vector<ConjugacyClassData> conjugacy_classes(int n) {
    check_degree(n);
    std::vector<ConjugacyClassData> out;
    for (auto& tau : partitions(n)) out.push_back({tau, class_size(tau), char_std(tau), n});
    return out;
}

CycleType power_class(const CycleType& tau, int k) {
    if (k < 0) fail(ErrorKind::InvalidArgument, "power must be nonnegative");
    std::vector<int> parts;
    for (int l : tau.parts) {
        int g = std::gcd(l, k);
        if (k == 0) g = l;
        for (int i = 0; i < g; ++i) parts.push_back(l / g);
    }
    return CycleType(parts);
}

SpectralPoint::SpectralPoint(std::vector<Rational> a) : angles(std::move(a)) {
    std::sort(angles.begin(), angles.end());
}

std::string SpectralPoint::to_string() const {
    std::string s = "(";
    for (size_t i = 0; i < angles.size(); ++i) {
        if (i) s += ",";
        s += rational_to_string(angles[i]);
    }
    return s + ")";
}

SpectralPoint spectral_point(const CycleType& tau) {
    std::vector<Rational> angles;
    bool removed = false;
    for (int f : tau.parts) {
        for (int j = 0; j < f; ++j) {
            if (j == 0 && !removed) {
                removed = true;
                continue;
            }
            angles.emplace_back(j, f);
        }
    }
    return SpectralPoint(std::move(angles));
}

GroupSpec parse_group_spec(const std::string& text) {
    GroupSpec spec;
    using K = GroupSpec::Kind;
    if (text == "C3_in_S3") {
        spec.kind = K::C3inS3;
        spec.n = 3;
    } else if (text == "S2_in_S3") {
        spec.kind = K::S2inS3;
        spec.n = 3;
    } else if (text == "D4_in_S4") {
        spec.kind = K::D4inS4;
        spec.n = 4;
    } else if (text == "Q8_dim2") {
        spec.kind = K::Q8Dim2;
        spec.n = 2;
    } else if (text.rfind("Sn_standard(", 0) == 0 && text.back() == ')') {
        spec.kind = K::SnStandard;
        spec.n = std::stoi(text.substr(12, text.size() - 13));
        check_degree(spec.n);
    } else if (!text.empty() && text[0] == 'S' && text.find(':') != std::string::npos) {
        spec.kind = K::Generators;
        size_t colon = text.find(':');
        spec.n = std::stoi(text.substr(1, colon - 1));
        check_degree(spec.n);
        std::string rest = text.substr(colon + 1);
        std::stringstream gens(rest);
        std::string gen;
        while (std::getline(gens, gen, ';')) {
            Permutation g(spec.n);
            std::iota(g.begin(), g.end(), 0);
            size_t pos = 0;
            while ((pos = gen.find('(', pos)) != std::string::npos) {
                size_t close = gen.find(')', pos);
                if (close == std::string::npos) fail(ErrorKind::InvalidArgument, "unbalanced cycle: " + gen);
                std::vector<int> cyc;
                std::stringstream pts(gen.substr(pos + 1, close - pos - 1));
                std::string pt;
                while (std::getline(pts, pt, ',')) {
                    int v = std::stoi(pt) - 1;
                    if (v < 0 || v >= spec.n) fail(ErrorKind::InvalidArgument, "point out of range: " + pt);
                    cyc.push_back(v);
                }
                // Compose the cycle on the right of what has been read so far.
                Permutation c(spec.n);
                std::iota(c.begin(), c.end(), 0);
                for (size_t i = 0; i < cyc.size(); ++i) c[cyc[i]] = cyc[(i + 1) % cyc.size()];
                Permutation next(spec.n);
                for (int i = 0; i < spec.n; ++i) next[i] = g[c[i]];
                g = next;
                pos = close + 1;
            }
            spec.generators.push_back(g);
        }
        if (spec.generators.empty()) fail(ErrorKind::InvalidArgument, "no generators in " + text);
    } else {
        fail(ErrorKind::InvalidArgument, "unknown group spec: " + text);
    }
    return spec;
}

std::vector<Permutation> group_closure(int n, const std::vector<Permutation>& gens, std::size_t bound) {
    Permutation id(n);
    std::iota(id.begin(), id.end(), 0);
    for (auto& g : gens) {
        Permutation s = g;
        std::sort(s.begin(), s.end());
        if (static_cast<int>(g.size()) != n || s != id) fail(ErrorKind::InvalidArgument, "generator is not a permutation");
    }
    std::set<Permutation> seen{id};
    std::vector<Permutation> queue{id};
    for (size_t head = 0; head < queue.size(); ++head) {
        for (auto& g : gens) {
            Permutation h(n);
            for (int i = 0; i < n; ++i) h[i] = g[queue[head][i]];
            if (seen.insert(h).second) {
                if (seen.size() > bound) fail(ErrorKind::ClosureTooLarge, "group closure exceeds bound");
                queue.push_back(h);
            }
        }
    }
    return queue;
}

CycleType cycle_type_of(const Permutation& g) {
    int n = static_cast<int>(g.size());
    std::vector<bool> done(n, false);
    std::vector<int> parts;
    for (int i = 0; i < n; ++i) {
        if (done[i]) continue;
        int len = 0;
        for (int j = i; !done[j]; j = g[j]) {
            done[j] = true;
            ++len;
        }
        parts.push_back(len);
    }
    return CycleType(parts);
}

SatoTateMeasure subgroup_pushforward(const GroupSpec& spec) {
    using K = GroupSpec::Kind;
    SatoTateMeasure mu;
    if (spec.kind == K::Q8Dim2) {
        // Classes {1}, {-1}, {+-i}, {+-j}, {+-k}; the last three share eigenvalues (i, -i).
        mu.dimension = 2;
        mu.atoms.emplace_back(SpectralPoint({0, 0}), Rational(1, 8));
        mu.atoms.emplace_back(SpectralPoint({Rational(1, 2), Rational(1, 2)}), Rational(1, 8));
        mu.atoms.emplace_back(SpectralPoint({Rational(1, 4), Rational(3, 4)}), Rational(3, 4));
        return mu;
    }
    mu.dimension = spec.n - 1;
    if (spec.kind == K::SnStandard) {
        check_degree(spec.n);
        BigInt order = factorial(static_cast<unsigned>(spec.n));
        for (auto& c : conjugacy_classes(spec.n)) mu.atoms.emplace_back(spectral_point(c.cycle_type), Rational(c.size, order));
        return mu;
    }
    std::vector<Permutation> gens = spec.generators;
    int n = spec.n;
    if (spec.kind == K::C3inS3) gens = {{1, 2, 0}};
    if (spec.kind == K::S2inS3) gens = {{1, 0, 2}};
    if (spec.kind == K::D4inS4) gens = {{1, 2, 3, 0}, {2, 1, 0, 3}};
    auto elements = group_closure(n, gens);
    std::map<SpectralPoint, long long> counts;
    for (auto& g : elements) ++counts[spectral_point(cycle_type_of(g))];
    for (auto& [pt, c] : counts) mu.atoms.emplace_back(pt, Rational(c, static_cast<long long>(elements.size())));
    return mu;
}

namespace {

// Element of Q(zeta_N) as coefficients of zeta^0..zeta^{N-1} (not reduced).
using Cyclo = std::vector<Rational>;

std::vector<BigInt> cyclotomic_poly(int N) {
    // Phi_N = (x^N - 1) / prod_{d | N, d < N} Phi_d
    std::vector<BigInt> num(N + 1, 0);
    num[0] = -1;
    num[N] = 1;
    for (int d = 1; d < N; ++d) {
        if (N % d) continue;
        auto den = cyclotomic_poly(d);
        int dd = static_cast<int>(den.size()) - 1;
        std::vector<BigInt> q(num.size() - dd, 0);
        for (int i = static_cast<int>(num.size()) - 1; i >= dd; --i) {
            BigInt c = num[i];
            q[i - dd] = c;
            for (int j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
        }
        num = q;
    }
    return num;
}

// Reduces modulo Phi_N and returns the rational value; fails if not rational.
Rational rational_value(Cyclo v, int N) {
    auto phi = cyclotomic_poly(N);
    int d = static_cast<int>(phi.size()) - 1;
    for (int i = N - 1; i >= d; --i) {
        Rational c = v[i];
        if (c == 0) continue;
        for (int j = 0; j <= d; ++j) v[i - d + j] -= c * phi[j];
    }
    for (int i = 1; i < d; ++i) {
        if (v[i] != 0) fail(ErrorKind::InvalidArgument, "indicator value is not rational");
    }
    return v[0];
}

}  // namespace

Indicators indicators(const SatoTateMeasure& mu) {
    Rational total = 0;
    BigInt lcm = 1;
    for (auto& [pt, mass] : mu.atoms) {
        if (mass < 0) fail(ErrorKind::NonNormalized, "negative mass");
        total += mass;
        for (auto& a : pt.angles) {
            BigInt den = denominator(a);
            lcm = lcm / boost::multiprecision::gcd(lcm, den) * den;
        }
    }
    if (total != 1) fail(ErrorKind::NonNormalized, "masses sum to " + rational_to_string(total));
    int N = static_cast<int>(lcm);
    Cyclo s1(N, 0), s2(N, 0), s3(N, 0);
    for (auto& [pt, mass] : mu.atoms) {
        std::vector<int> e;
        for (auto& a : pt.angles) e.push_back(static_cast<int>(numerator(a) * N / denominator(a)));
        for (int x : e) {
            for (int y : e) {
                s1[((x - y) % N + N) % N] += mass;
                s2[(x + y) % N] += mass;
            }
            s3[(2 * x) % N] += mass;
        }
    }
    return {rational_value(s1, N), rational_value(s2, N), rational_value(s3, N)};
}

Rational two_torsion_proportion(int n) {
    check_degree(n);
    BigInt count = 0;
    for (auto& c : conjugacy_classes(n)) {
        if (c.cycle_type.parts.front() <= 2) count += c.size;
    }
    return Rational(count, factorial(static_cast<unsigned>(n)));
}

}  // namespace arithstat
