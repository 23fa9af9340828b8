#include "arithstat/cache.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace arithstat {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

void append_symbols(std::ostringstream& s, const std::vector<SymbolCode>& codes) {
    for (SymbolCode c : codes) s << ',' << symbol_of_code(c).encode();
}

BigInt parse_big(const std::string& text) {
    try {
        return BigInt(text);
    } catch (const std::exception&) {
        fail(ErrorKind::FormatMismatch, "bad integer in cache: '" + text + "'");
    }
}

}  // namespace

long double log_abs_big(const BigInt& v) {
    BigInt a = abs(v);
    if (a == 0) fail(ErrorKind::InvalidArgument, "log of zero");
    unsigned bits = static_cast<unsigned>(msb(a)) + 1;
    if (bits < 60) return std::log(static_cast<long double>(a.convert_to<u64>()));
    BigInt top = a >> (bits - 60);
    return std::log(static_cast<long double>(top.convert_to<u64>())) + (bits - 60) * std::log(2.0L);
}

void write_cache_header(std::ostream& out, const CacheMeta& meta, const std::vector<std::string>& leading) {
    out << "# arithstat-cache format-version=" << meta.version << " family=" << meta.family << " degree=" << meta.degree
        << " x=" << meta.x;
    for (auto& [k, v] : meta.extra) out << ' ' << k << '=' << v;
    out << '\n';
    bool first = true;
    for (auto& c : leading) {
        out << (first ? "" : ",") << c;
        first = false;
    }
    for (u64 p : meta.primes) out << ",p" << p;
    out << '\n';
}

std::vector<std::string> monic_columns(int n) {
    std::vector<std::string> c{"id", "n"};
    for (int i = 1; i <= n; ++i) c.push_back("a" + std::to_string(i));
    c.push_back("conductor");
    c.push_back("flags");
    return c;
}
std::vector<std::string> cubic_columns() { return {"a", "b", "c", "d", "disc", "ntr", "resolvent_disc"}; }
std::vector<std::string> twist_columns() { return {"q", "conductor", "alpha"}; }

std::string monic_row(const FamilyRecord& r) {
    std::ostringstream s;
    s << r.id << ',' << r.poly.degree();
    for (auto& a : r.poly.a) s << ',' << a;
    s << ',' << r.conductor << ',' << (r.irreducible ? 'i' : '-') << (r.maximal ? 'm' : '-') << (r.fully_factored ? 'f' : '-');
    append_symbols(s, r.splitting);
    return s.str();
}

std::string cubic_row(const CubicFieldRecord& r) {
    std::ostringstream s;
    s << r.form.a << ',' << r.form.b << ',' << r.form.c << ',' << r.form.d << ',' << r.disc << ',' << (r.ntr ? 1 : 0) << ','
      << r.resolvent_disc;
    append_symbols(s, r.splitting);
    return s.str();
}

std::string twist_row(const TwistRecord& r) {
    std::ostringstream s;
    s << r.q << ',' << r.conductor << ',' << r.alpha;
    append_symbols(s, r.codes);
    return s.str();
}

CacheMeta read_cache_header(std::istream& in, std::vector<std::string>* columns) {
    std::string line;
    if (!std::getline(in, line)) fail(ErrorKind::Io, "empty cache");
    const std::string tag = "# arithstat-cache ";
    if (line.rfind(tag, 0) != 0) fail(ErrorKind::FormatMismatch, "not an arithstat cache");
    CacheMeta meta;
    meta.version = -1;
    std::istringstream fields(line.substr(tag.size()));
    std::string kv;
    while (fields >> kv) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) continue;
        std::string k = kv.substr(0, eq), v = kv.substr(eq + 1);
        if (k == "format-version") meta.version = std::stoi(v);
        else if (k == "family") meta.family = v;
        else if (k == "degree") meta.degree = std::stoi(v);
        else if (k == "x") meta.x = v;
        else meta.extra[k] = v;
    }
    if (meta.version != kCacheFormatVersion)
        fail(ErrorKind::FormatMismatch, "cache format-version " + std::to_string(meta.version) + ", expected " +
                                            std::to_string(kCacheFormatVersion));
    if (meta.degree < 2 || meta.degree > 8) fail(ErrorKind::FormatMismatch, "cache degree missing or out of range");
    if (!std::getline(in, line)) fail(ErrorKind::FormatMismatch, "cache has no column line");
    auto cols = split_csv(line);
    for (auto& c : cols) {
        if (c.size() > 1 && c[0] == 'p' && std::isdigit(static_cast<unsigned char>(c[1]))) meta.primes.push_back(std::stoull(c.substr(1)));
    }
    if (columns) *columns = cols;
    return meta;
}

std::vector<FamilyRecord> read_monic_cache(std::istream& in, CacheMeta* meta_out) {
    std::vector<std::string> cols;
    CacheMeta meta = read_cache_header(in, &cols);
    if (meta.family != "monic") fail(ErrorKind::FormatMismatch, "not a monic cache");
    const int n = meta.degree;
    const std::size_t lead = static_cast<std::size_t>(n) + 4;
    std::vector<FamilyRecord> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto f = split_csv(line);
        if (f.size() != lead + meta.primes.size()) fail(ErrorKind::FormatMismatch, "bad row width: " + line);
        FamilyRecord r;
        r.id = std::stoull(f[0]);
        std::vector<BigInt> a;
        for (int i = 0; i < n; ++i) a.push_back(parse_big(f[2 + static_cast<std::size_t>(i)]));
        r.poly = MonicPoly(a);
        r.conductor = parse_big(f[2 + static_cast<std::size_t>(n)]);
        const std::string& flags = f[3 + static_cast<std::size_t>(n)];
        if (flags.size() != 3) fail(ErrorKind::FormatMismatch, "bad flags: " + flags);
        r.irreducible = flags[0] == 'i';
        r.maximal = flags[1] == 'm';
        r.fully_factored = flags[2] == 'f';
        for (std::size_t i = lead; i < f.size(); ++i) r.splitting.push_back(symbol_code(decode_symbol(f[i])));
        out.push_back(std::move(r));
    }
    if (meta_out) *meta_out = meta;
    return out;
}

FamilyStats load_cache_stats(const std::string& path, CacheMeta* meta_out) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::Io, "cannot open cache " + path);
    std::vector<std::string> cols;
    CacheMeta meta = read_cache_header(in, &cols);
    std::size_t cond = cols.size(), first_prime = cols.size();
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (cols[i] == "conductor" || (cols[i] == "disc" && cond == cols.size())) cond = i;
        if (first_prime == cols.size() && cols[i].size() > 1 && cols[i][0] == 'p' &&
            std::isdigit(static_cast<unsigned char>(cols[i][1])))
            first_prime = i;
    }
    if (cond == cols.size()) fail(ErrorKind::FormatMismatch, "cache has no conductor column");
    FamilyStats stats(meta.degree, meta.primes);
    std::vector<SymbolCode> codes(meta.primes.size());
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto f = split_csv(line);
        if (f.size() != cols.size()) fail(ErrorKind::FormatMismatch, "bad row width: " + line);
        for (std::size_t i = 0; i < codes.size(); ++i) codes[i] = symbol_code(decode_symbol(f[first_prime + i]));
        stats.add(log_abs_big(parse_big(f[cond])), codes.data());
    }
    if (meta_out) *meta_out = meta;
    return stats;
}

}  // namespace arithstat
