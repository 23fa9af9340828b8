#include "arithstat/symbols.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "arithstat/arith.hpp"

namespace arithstat {

CycleType::CycleType(std::vector<int> p) : parts(std::move(p)) {
    std::sort(parts.begin(), parts.end(), std::greater<>());
    if (parts.empty() || parts.back() <= 0) fail(ErrorKind::InvalidArgument, "cycle type needs positive parts");
}

int CycleType::degree() const { return std::accumulate(parts.begin(), parts.end(), 0); }

int CycleType::multiplicity(int k) const {
    return static_cast<int>(std::count(parts.begin(), parts.end(), k));
}

std::string CycleType::to_string() const {
    bool wide = std::any_of(parts.begin(), parts.end(), [](int v) { return v > 9; });
    std::string s = "(";
    for (size_t i = 0; i < parts.size(); ++i) {
        if (wide && i) s += ",";
        s += std::to_string(parts[i]);
    }
    return s + ")";
}

CycleType parse_cycle_type(const std::string& text) {
    std::string t;
    for (char c : text) {
        if (c != '(' && c != ')' && c != ' ') t += c;
    }
    std::vector<int> parts;
    if (t.find(',') != std::string::npos) {
        size_t start = 0;
        while (start <= t.size()) {
            size_t comma = t.find(',', start);
            if (comma == std::string::npos) comma = t.size();
            parts.push_back(std::stoi(t.substr(start, comma - start)));
            start = comma + 1;
        }
    } else {
        for (char c : t) {
            if (c < '1' || c > '9') fail(ErrorKind::InvalidArgument, "bad cycle type: " + text);
            parts.push_back(c - '0');
        }
    }
    return CycleType(std::move(parts));
}

SplittingSymbol::SplittingSymbol(std::vector<std::pair<int, int>> ef) : factors(std::move(ef)) {
    for (auto& [e, f] : factors) {
        if (e <= 0 || f <= 0) fail(ErrorKind::InvalidArgument, "splitting symbol needs positive e and f");
    }
    std::sort(factors.begin(), factors.end(), [](const auto& x, const auto& y) {
        if (x.second != y.second) return x.second > y.second;
        return x.first > y.first;
    });
}

int SplittingSymbol::degree() const {
    int d = 0;
    for (auto& [e, f] : factors) d += e * f;
    return d;
}

bool SplittingSymbol::unramified() const {
    return std::all_of(factors.begin(), factors.end(), [](const auto& ef) { return ef.first == 1; });
}

CycleType SplittingSymbol::cycle_type() const {
    std::vector<int> parts;
    for (auto& [e, f] : factors) parts.push_back(f);
    return CycleType(parts);
}

std::string SplittingSymbol::encode() const {
    std::string s;
    for (auto& [e, f] : factors) {
        if (!s.empty()) s += "+";
        s += std::to_string(e) + ":" + std::to_string(f);
    }
    return s;
}

SplittingSymbol decode_symbol(const std::string& text) {
    std::vector<std::pair<int, int>> ef;
    size_t start = 0;
    while (start < text.size()) {
        size_t plus = text.find('+', start);
        if (plus == std::string::npos) plus = text.size();
        std::string item = text.substr(start, plus - start);
        size_t colon = item.find(':');
        if (colon == std::string::npos) fail(ErrorKind::FormatMismatch, "bad symbol: " + text);
        ef.emplace_back(std::stoi(item.substr(0, colon)), std::stoi(item.substr(colon + 1)));
        start = plus + 1;
    }
    if (ef.empty()) fail(ErrorKind::FormatMismatch, "empty symbol");
    return SplittingSymbol(std::move(ef));
}

SplittingSymbol symbol_from_cycle_type(const CycleType& t) {
    std::vector<std::pair<int, int>> ef;
    for (int f : t.parts) ef.emplace_back(1, f);
    return SplittingSymbol(std::move(ef));
}

std::vector<CycleType> partitions(int n) {
    std::vector<CycleType> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int rest, int maxpart) {
        if (rest == 0) {
            out.emplace_back(cur);
            return;
        }
        for (int k = std::min(rest, maxpart); k >= 1; --k) {
            cur.push_back(k);
            rec(rest - k, k);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

}  // namespace arithstat

namespace arithstat {

namespace {

struct SymbolRegistry {
    std::vector<SplittingSymbol> symbols;
    std::map<SplittingSymbol, SymbolCode> index;

    SymbolRegistry() {
        for (int n = 1; n <= 8; ++n) {
            std::vector<std::pair<int, int>> cells;
            for (int f = 1; f <= n; ++f) {
                for (int e = 1; e * f <= n; ++e) cells.emplace_back(e, f);
            }
            std::vector<std::pair<int, int>> cur;
            std::function<void(size_t, int)> rec = [&](size_t start, int rest) {
                if (rest == 0) {
                    SplittingSymbol s(cur);
                    index.emplace(s, static_cast<SymbolCode>(symbols.size()));
                    symbols.push_back(s);
                    return;
                }
                for (size_t i = start; i < cells.size(); ++i) {
                    int w = cells[i].first * cells[i].second;
                    if (w > rest) continue;
                    cur.push_back(cells[i]);
                    rec(i, rest - w);
                    cur.pop_back();
                }
            };
            rec(0, n);
        }
    }
};

const SymbolRegistry& registry() {
    static const SymbolRegistry r;
    return r;
}

}  // namespace

SymbolCode symbol_code(const SplittingSymbol& s) {
    auto it = registry().index.find(s);
    if (it == registry().index.end()) fail(ErrorKind::InvalidArgument, "symbol degree exceeds 8: " + s.encode());
    return it->second;
}

const SplittingSymbol& symbol_of_code(SymbolCode code) {
    if (code >= registry().symbols.size()) fail(ErrorKind::InvalidArgument, "unknown symbol code");
    return registry().symbols[code];
}

std::size_t symbol_code_count() { return registry().symbols.size(); }

}  // namespace arithstat
