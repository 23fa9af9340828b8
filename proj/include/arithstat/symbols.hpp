#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace arithstat {

// A partition of n, parts weakly decreasing.
struct CycleType {
    std::vector<int> parts;

    CycleType() = default;
    explicit CycleType(std::vector<int> p);

    int degree() const;
    int multiplicity(int k) const;
    int fixed_points() const { return multiplicity(1); }
    std::string to_string() const;  // "(211)", parts above 9 comma separated

    friend bool operator==(const CycleType&, const CycleType&) = default;
    friend auto operator<=>(const CycleType&, const CycleType&) = default;
};

CycleType parse_cycle_type(const std::string& text);  // "211", "(211)" or "2,1,1"

// Decomposition of a prime: (e, f) pairs sorted by (f, e) descending.
struct SplittingSymbol {
    std::vector<std::pair<int, int>> factors;

    SplittingSymbol() = default;
    explicit SplittingSymbol(std::vector<std::pair<int, int>> ef);

    int degree() const;
    bool unramified() const;
    CycleType cycle_type() const;  // residue degrees; meaningful when unramified
    std::string encode() const;    // "2:1+1:1"

    friend bool operator==(const SplittingSymbol&, const SplittingSymbol&) = default;
    friend auto operator<=>(const SplittingSymbol&, const SplittingSymbol&) = default;
};

SplittingSymbol decode_symbol(const std::string& text);
SplittingSymbol symbol_from_cycle_type(const CycleType& t);

// All partitions of n, in reverse lexicographic order: (n), (n-1,1), ...
std::vector<CycleType> partitions(int n);

}  // namespace arithstat

namespace arithstat {

// Compact ids for splitting symbols of degree <= 8, stable within a process.
using SymbolCode = std::uint16_t;
SymbolCode symbol_code(const SplittingSymbol& s);
const SplittingSymbol& symbol_of_code(SymbolCode code);
std::size_t symbol_code_count();

}  // namespace arithstat
