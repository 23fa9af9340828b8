// arithstat command line: one subcommand per experiment, JSON report on
// stdout, CSV caches via --out.  Exit 0 ok, 1 bad input, 2 broken invariant.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <regex>
#include <string>

#include <omp.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "arithstat/cache.hpp"
#include "arithstat/conjugacy.hpp"
#include "arithstat/cubicforms.hpp"
#include "arithstat/formspaces.hpp"
#include "arithstat/lowlying.hpp"
#include "arithstat/massformula.hpp"
#include "arithstat/monicfamily.hpp"
#include "arithstat/polyfactor.hpp"
#include "arithstat/quaternion.hpp"

using json = nlohmann::ordered_json;
using namespace arithstat;

namespace {

constexpr int kReportFormatVersion = 1;

std::string rat(const Rational& r) { return rational_to_string(r); }
std::string big(const BigInt& v) { return v.str(); }

// "100000", "1e8", "10^8".
BigInt parse_count(const std::string& text) {
    static const std::regex plain("[0-9]+"), sci("([0-9]+)[eE]([0-9]+)"), power("([0-9]+)\\^([0-9]+)");
    std::smatch m;
    if (std::regex_match(text, plain)) return BigInt(text);
    if (std::regex_match(text, m, sci))
        return BigInt(m[1].str()) * pow_big(BigInt(10), static_cast<unsigned>(std::stoul(m[2].str())));
    if (std::regex_match(text, m, power))
        return pow_big(BigInt(m[1].str()), static_cast<unsigned>(std::stoul(m[2].str())));
    fail(ErrorKind::InvalidArgument, "cannot read '" + text + "' as a nonnegative integer");
}

json density_json(const DensityReport& r) {
    json j;
    j["family"] = r.family;
    j["x"] = r.x;
    j["p"] = r.p;
    j["total"] = r.total;
    json types = json::array();
    for (auto& [k, c] : r.counts) {
        json t{{"type", k}, {"count", c}, {"empirical", rat(r.empirical.at(k))}};
        if (r.predicted.count(k)) {
            t["predicted"] = rat(r.predicted.at(k));
            t["z"] = r.z_scores.at(k);
        }
        types.push_back(t);
    }
    j["types"] = types;
    j["t_empirical"] = rat(r.t_empirical);
    if (!r.predicted.empty()) j["t_predicted"] = rat(r.t_predicted);
    return j;
}

json onelevel_json(const OneLevelReport& r) {
    json j{{"x", r.x},     {"sigma", r.sigma},         {"symmetry", to_string(r.symmetry)},
           {"L", r.L},     {"family_size", r.family_size}, {"cutoff", r.sums.cutoff},
           {"S1", r.sums.S1}, {"S2", r.sums.S2},       {"S3", r.sums.S3},
           {"S_ram", r.sums.S_ram}, {"D", r.D},        {"target", r.target},
           {"deviation", std::fabs(r.D - r.target)}};
    json per = json::array();
    for (auto& [p, v] : r.sums.s1_by_prime) per.push_back({{"p", p}, {"S1", v}});
    j["s1_by_prime"] = per;
    return j;
}

json counters_json(const SieveCounters& c) {
    return {{"examined", c.examined},     {"zero_disc", c.zero_disc}, {"reducible", c.reducible},
            {"nonmaximal", c.nonmaximal}, {"unresolved", c.unresolved}, {"kept", c.kept}};
}

json decomposition_json(const ThreeSquares& d) {
    json u = json::array(), v = json::array();
    for (auto& c : d.u) u.push_back(rat(c));
    for (auto& c : d.v) v.push_back(rat(c));
    return {{"alpha_beta_gamma", u}, {"lambda_mu_nu", v}};
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) fail(ErrorKind::Io, "cannot write " + path);
    return f;
}

struct Options {
    int n = 3;
    std::string x;
    u64 p = 0;
    u64 pmax = kDefaultPrimeCache;
    std::string out;
    std::string cache;
    double sigma = 0.25;
    std::string symmetry = "sp";
    u64 samples = 2000;
    u64 seed = 0;
    bool seed_given = false;
    std::string spec;
    i64 a = 2, b = 3;
    i64 qmax = 100000;
    int denominator = 4;
    bool serial = false;
    bool squarefree = false;
    u64 trial_bound = 1000000;
    std::string family = "monic";
    bool json_flag = false;
};

json run_monic(const Options& o, json& cfg) {
    MonicOptions mo;
    mo.n = o.n;
    mo.x = parse_count(o.x);
    mo.pmax = o.pmax;
    mo.parallel = !o.serial;
    mo.sieve.squarefree_only = o.squarefree;
    mo.sieve.trial_bound = o.trial_bound;
    if (o.n < 2 || o.n > 5) fail(ErrorKind::InvalidArgument, "--n must lie in [2, 5]");
    cfg["x_value"] = big(mo.x);
    std::ofstream file;
    std::function<void(const FamilyRecord&)> write;
    if (!o.out.empty()) {
        file = open_out(o.out);
        CacheMeta meta;
        meta.family = "monic";
        meta.degree = o.n;
        meta.x = big(mo.x);
        meta.primes = o.pmax ? primes_up_to(o.pmax) : std::vector<u64>{};
        write_cache_header(file, meta, monic_columns(o.n));
        write = [&](const FamilyRecord& r) { file << monic_row(r) << '\n'; };
        mo.visit = &write;
    }
    MonicRun run = run_monic_family(mo);
    double xd = mo.x.convert_to<double>();
    double main = monic_count_main_term(o.n, xd);
    json j{{"count", run.stats.count}, {"counters", counters_json(run.counters)}, {"main_term", main},
           {"ratio", static_cast<double>(run.stats.count) / main}};
    if (run.stats.count) j["mean_log_conductor"] = run.stats.mean_log_conductor();
    return j;
}

json run_cubic(const Options& o, json& cfg) {
    BigInt xb = parse_count(o.x);
    if (xb < 1 || xb > BigInt(1) << 40) fail(ErrorKind::InvalidArgument, "--x out of range");
    i64 x = xb.convert_to<i64>();
    cfg["x_value"] = x;
    CubicEnumeration e = enumerate_cubic_fields(x, o.pmax, !o.serial);
    if (!o.out.empty()) {
        std::ofstream file = open_out(o.out);
        CacheMeta meta;
        meta.family = "cubic";
        meta.degree = 3;
        meta.x = std::to_string(x);
        meta.primes = e.primes;
        write_cache_header(file, meta, cubic_columns());
        for (auto& r : e.records) file << cubic_row(r) << '\n';
    }
    u64 pos = 0, neg = 0;
    for (auto& r : e.records) (r.disc > 0 ? pos : neg)++;
    double main = static_cast<double>(x) / (3 * zeta3());
    return {{"count", e.records.size()}, {"positive", pos}, {"negative", neg}, {"candidates", e.candidates},
            {"main_term", main}, {"ratio", static_cast<double>(e.records.size()) / main}};
}

json run_density(const Options& o, json&) {
    CacheMeta meta;
    FamilyStats stats = load_cache_stats(o.cache, &meta);
    std::map<std::string, Rational> predicted;
    if (meta.family == "monic") {
        predicted = monic_predicted(meta.degree, o.p);
    } else if (meta.family == "cubic") {
        predicted = cubic_predicted(o.p);
    } else if (meta.family == "quaternion") {
        if (meta.extra.count("a") && meta.extra.count("b")) {
            QuaternionParams P = QuaternionParams::search(std::stoll(meta.extra["a"]), std::stoll(meta.extra["b"]),
                                                          std::stoi(meta.extra.count("D") ? meta.extra["D"] : "4"));
            if (o.p != 2 && P.a % static_cast<i64>(o.p) && P.b % static_cast<i64>(o.p)) predicted = twist_predicted(P, o.p);
        }
    } else {
        fail(ErrorKind::FormatMismatch, "unknown cache family " + meta.family);
    }
    return density_json(density_from_stats(stats, o.p, predicted, meta.family, meta.x));
}

json run_onelevel(const Options& o, json&) {
    CacheMeta meta;
    FamilyStats stats = load_cache_stats(o.cache, &meta);
    ThetaFn theta = meta.family == "quaternion" ? ThetaFn(theta_Q8) : ThetaFn(default_theta);
    return onelevel_json(one_level_density(stats, o.sigma, parse_symmetry(o.symmetry), meta.x, theta));
}

json run_pairdensity(const Options& o, json&) {
    PairDensity d = brute_force_pair_density(o.p, !o.serial);
    u64 nondeg = d.total - d.degenerate;
    json types = json::array();
    for (auto& tau : partitions(4)) {
        u64 c = d.counts.count(tau) ? d.counts.at(tau) : 0;
        Rational expected = Rational(class_size(tau), 24);
        types.push_back({{"type", tau.to_string()},
                         {"count", c},
                         {"fraction", rat(Rational(c, nondeg))},
                         {"predicted", rat(expected)},
                         {"exact", Rational(c, nondeg) == expected}});
    }
    return {{"p", d.p}, {"total", d.total}, {"degenerate", d.degenerate}, {"types", types}};
}

json run_quintic(const Options& o, json&) {
    if (!o.seed_given) fail(ErrorKind::InvalidArgument, "--seed is required for Monte Carlo runs");
    QuinticMonteCarlo mc = quintic_monte_carlo(o.p, o.samples, o.seed, !o.serial);
    u64 n = mc.nondegenerate();
    json types = json::array();
    for (auto& tau : partitions(5)) {
        u64 c = mc.counts.count(tau) ? mc.counts.at(tau) : 0;
        double pr = class_size(tau).convert_to<double>() / 120.0;
        double z = (static_cast<double>(c) / n - pr) / std::sqrt(pr * (1 - pr) / n);
        types.push_back({{"type", tau.to_string()}, {"count", c}, {"predicted", rat(Rational(class_size(tau), 120))}, {"z", z}});
    }
    return {{"p", mc.p},       {"seed", mc.seed},           {"draws", mc.draws},
            {"degenerate", mc.degenerate}, {"nondegenerate", n}, {"types", types}};
}

json run_mass(const Options& o, json&) {
    LocalDensityTable t = local_density(o.n);
    json coeffs = json::array();
    for (auto& c : t.coeffs) coeffs.push_back(big(c));
    json masses = json::array();
    for (u64 p : {2, 3, 5, 7}) masses.push_back({{"p", p}, {"mass", rat(local_mass(o.n, p))}, {"d_p", rat(t.at(p))}});
    ConstantEstimate c = field_count_constant(o.n, o.pmax);
    json j{{"n", o.n}, {"d_p_coefficients", coeffs}, {"examples", masses},
           {"constant", {{"value", c.value}, {"lower", c.lower}, {"upper", c.upper}, {"prime_cutoff", c.prime_cutoff}}}};
    if (o.n == 3) j["one_over_3_zeta3"] = 1.0 / (3 * zeta3());
    return j;
}

json run_group(const Options& o, json&) {
    SatoTateMeasure mu = subgroup_pushforward(parse_group_spec(o.spec));
    Indicators ind = indicators(mu);
    json atoms = json::array();
    for (auto& [pt, mass] : mu.atoms) atoms.push_back({{"point", pt.to_string()}, {"mass", rat(mass)}});
    return {{"dimension", mu.dimension}, {"atoms", atoms}, {"i1", rat(ind.i1)}, {"i2", rat(ind.i2)}, {"i3", rat(ind.i3)}};
}

json run_quaternion(const Options& o, json&) {
    QuaternionParams P = QuaternionParams::search(o.a, o.b, o.denominator);
    DegreeCertificate cert = sqrt_theta_degree(P);
    json minpoly = json::array();
    for (auto& c : sqrt_theta_minpoly(P.theta)) minpoly.push_back(rat(c));
    json j{{"a", P.a},
           {"b", P.b},
           {"decomposition", decomposition_json(P.decomposition)},
           {"theta", P.theta.to_string()},
           {"sqrt_theta_minpoly", minpoly},
           {"degree", cert.degree},
           {"nonsquare_witnesses", cert.nonsquare_primes},
           {"two_unramified_in_M", P.two_unramified()}};
    // Grow the prime cache until it covers exp(sigma L).
    u64 pmax = o.pmax;
    for (;;) {
        std::ofstream file;
        std::function<void(const TwistRecord&)> write;
        CacheMeta meta;
        if (!o.out.empty()) {
            file = open_out(o.out);
            meta.family = "quaternion";
            meta.degree = 8;
            meta.x = std::to_string(o.qmax);
            meta.primes = primes_up_to(pmax);
            meta.extra = {{"a", std::to_string(P.a)}, {"b", std::to_string(P.b)}, {"D", std::to_string(o.denominator)}};
            write_cache_header(file, meta, twist_columns());
            write = [&](const TwistRecord& r) { file << twist_row(r) << '\n'; };
        }
        TwistRun run = run_twists(P, o.qmax, pmax, !o.serial, o.out.empty() ? nullptr : &write);
        try {
            OneLevelReport r = one_level_density(run.stats, o.sigma, Symmetry::SO, std::to_string(o.qmax), theta_Q8);
            j["family_size"] = run.stats.count;
            j["alpha"] = {{"0", run.alpha0}, {"4", run.alpha4}, {"undecided", run.alpha_undecided}};
            j["pmax"] = pmax;
            json dens = json::array();
            for (u64 p : run.stats.primes) {
                if (p > 100) break;
                std::map<std::string, Rational> pred;
                if (p != 2 && P.a % static_cast<i64>(p) && P.b % static_cast<i64>(p)) pred = twist_predicted(P, p);
                dens.push_back(density_json(density_from_stats(run.stats, p, pred, "quaternion", std::to_string(o.qmax))));
            }
            j["densities"] = dens;
            j["onelevel"] = onelevel_json(r);
            return j;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::InsufficientPrimeCache || pmax > 1000000) throw;
            pmax *= 2;
        }
    }
}

json run_zp2(const Options& o, json&) {
    MaximalCensus c;
    Rational expected;
    if (o.family == "monic") {
        c = maximal_census_mod_p2(o.n, o.p);
        expected = 1 - Rational(1, o.p * o.p);
    } else if (o.family == "cubic") {
        c = cubic_maximal_census_mod_p2(o.p);
        expected = (1 - Rational(1, o.p * o.p)) * (1 - Rational(1, o.p * o.p * o.p));
    } else {
        fail(ErrorKind::InvalidArgument, "--family must be monic or cubic");
    }
    Rational rho(c.maximal, c.total);
    return {{"family", o.family}, {"n", o.family == "monic" ? o.n : 3}, {"p", o.p}, {"total", c.total},
            {"maximal", c.maximal}, {"rho", rat(rho)}, {"expected", rat(expected)}, {"exact", rho == expected}};
}

void emit_error(const std::string& kind, const std::string& message) {
    json e{{"error", kind}, {"message", message}};
    std::cerr << e.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* t = std::getenv("ARITHSTAT_THREADS")) {
        int n = std::atoi(t);
        if (n > 0) omp_set_num_threads(n);
    }

    CLI::App app{"arithstat: splitting statistics and low-lying zero experiments for families of number fields"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();
    Options o;

    std::map<std::string, std::function<json(const Options&, json&)>> handlers;
    std::map<std::string, json> configs;
    auto sub = [&](const std::string& name, const std::string& help, auto handler) {
        CLI::App* s = app.add_subcommand(name, help);
        s->add_flag("--json", o.json_flag, "JSON report (the default and only report format)");
        handlers[name] = handler;
        return s;
    };

    auto* monic = sub("monic", "enumerate monic polynomials by height", run_monic);
    monic->add_option("--n", o.n, "degree")->check(CLI::Range(2, 5));
    monic->add_option("--x", o.x, "height bound, e.g. 1e6")->required();
    monic->add_option("--pmax", o.pmax, "largest cached prime (0 disables)");
    monic->add_option("--out", o.out, "CSV cache path");
    monic->add_option("--trial-bound", o.trial_bound, "trial division bound M for discriminants");
    monic->add_flag("--squarefree", o.squarefree, "keep squarefree discriminants only");
    monic->add_flag("--serial", o.serial, "serial reference path");

    auto* cubic = sub("cubic", "enumerate cubic fields by binary cubic forms", run_cubic);
    cubic->add_option("--x", o.x, "discriminant bound")->required();
    cubic->add_option("--pmax", o.pmax, "largest cached prime");
    cubic->add_option("--out", o.out, "CSV cache path");
    cubic->add_flag("--serial", o.serial, "serial reference path");

    auto* density = sub("density", "splitting densities at p from a cache", run_density);
    density->add_option("--cache", o.cache, "cache CSV")->required();
    density->add_option("--p", o.p, "prime")->required();

    auto* onelevel = sub("onelevel", "one-level density from a cache", run_onelevel);
    onelevel->add_option("--cache", o.cache, "cache CSV")->required();
    onelevel->add_option("--sigma", o.sigma, "support of the Fourier transform");
    onelevel->add_option("--symmetry", o.symmetry, "sp or so");

    auto* pairs = sub("pairdensity", "all pairs of ternary forms over F_p", run_pairdensity);
    pairs->add_option("--p", o.p, "odd prime <= 7")->required();
    pairs->add_flag("--serial", o.serial, "serial reference path");

    auto* quintic = sub("quintic-mc", "Monte Carlo over quadruples of 5x5 alternating forms", run_quintic);
    quintic->add_option("--p", o.p, "prime")->required();
    quintic->add_option("--samples", o.samples, "nondegenerate samples");
    quintic->add_option("--seed", o.seed, "random seed")->required();
    quintic->add_flag("--serial", o.serial, "serial reference path");

    auto* mass = sub("mass", "local densities and the field-count constant", run_mass);
    mass->add_option("--n", o.n, "degree")->check(CLI::Range(2, 8));
    mass->add_option("--pmax", o.pmax, "prime cutoff for the Euler product");

    auto* group = sub("group", "Sato-Tate measure and indicators of a finite group", run_group);
    group->add_option("--spec", o.spec, "Sn_standard(5), C3_in_S3, S2_in_S3, D4_in_S4, Q8_dim2 or generators")->required();

    auto* quat = sub("quaternion", "quadratic twist family of a quaternionic field", run_quaternion);
    quat->add_option("--a", o.a, "a");
    quat->add_option("--b", o.b, "b");
    quat->add_option("--qmax", o.qmax, "bound on |q|");
    quat->add_option("--sigma", o.sigma, "support of the Fourier transform");
    quat->add_option("--pmax", o.pmax, "initial prime cache");
    quat->add_option("--denominator", o.denominator, "denominator bound for the three-square search");
    quat->add_option("--out", o.out, "per-twist CSV path");
    quat->add_flag("--serial", o.serial, "serial reference path");

    auto* zp2 = sub("bruteforce-zp2", "maximal proportion over Z/p^2 by full enumeration", run_zp2);
    zp2->add_option("--family", o.family, "monic or cubic");
    zp2->add_option("--n", o.n, "degree for the monic family")->check(CLI::Range(1, 6));
    zp2->add_option("--p", o.p, "prime")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        emit_error("InvalidArgument", e.what());
        return 1;
    }

    CLI::App* chosen = app.get_subcommands().front();
    const std::string name = chosen->get_name();
    o.seed_given = name == "quintic-mc" && chosen->count("--seed") > 0;
    json cfg;
    for (const CLI::Option* opt : chosen->get_options()) {
        if (opt->get_name() == "--help" || opt->get_name() == "--json") continue;
        std::string key = opt->get_name();
        while (!key.empty() && key[0] == '-') key.erase(0, 1);
        auto res = opt->results();
        if (opt->get_type_size() == 0) cfg[key] = opt->count() > 0;
        else if (!res.empty()) cfg[key] = res.front();
        else if (!opt->get_default_str().empty()) cfg[key] = opt->get_default_str();
    }
    if (std::getenv("ARITHSTAT_THREADS")) cfg["threads_env"] = std::getenv("ARITHSTAT_THREADS");

    try {
        if (!o.p || name == "monic" || name == "cubic" || name == "mass" || name == "group" || name == "quaternion" ||
            name == "onelevel") {
        } else if (!is_prime_u64(o.p)) {
            fail(ErrorKind::InvalidArgument, "--p must be prime");
        }
        json result = handlers.at(name)(o, cfg);
        json report{{"format_version", kReportFormatVersion}, {"command", name}, {"config", cfg}, {"result", result}};
        std::cout << report.dump(2) << '\n';
        return 0;
    } catch (const Error& e) {
        emit_error(to_string(e.kind()), e.what());
        return e.is_invariant_violation() ? 2 : 1;
    } catch (const std::exception& e) {
        emit_error("Internal", e.what());
        return 2;
    }
}
