#pragma once

// Family caches: one CSV row per field with its splitting symbols at the
// cached primes, behind a versioned comment header.

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "arithstat/arith.hpp"
#include "arithstat/cubicforms.hpp"
#include "arithstat/family.hpp"
#include "arithstat/monicfamily.hpp"
#include "arithstat/quaternion.hpp"

namespace arithstat {

constexpr int kCacheFormatVersion = 1;

struct CacheMeta {
    int version = kCacheFormatVersion;
    std::string family;  // monic, cubic, quaternion
    int degree = 0;
    std::string x;
    std::vector<u64> primes;
    std::map<std::string, std::string> extra;  // further key=value pairs of the header
};

// "# arithstat-cache format-version=1 family=monic degree=3 x=1e6" then the column line.
void write_cache_header(std::ostream& out, const CacheMeta& meta, const std::vector<std::string>& leading);

std::string monic_row(const FamilyRecord& r);             // id,n,a1..an,conductor,flags,symbols
std::string cubic_row(const CubicFieldRecord& r);         // a,b,c,d,disc,ntr,resolvent_disc,symbols
std::string twist_row(const TwistRecord& r);              // q,conductor,alpha,symbols
std::vector<std::string> monic_columns(int n);
std::vector<std::string> cubic_columns();
std::vector<std::string> twist_columns();

// Raises Io for unreadable input and FormatMismatch for a foreign or newer version.
CacheMeta read_cache_header(std::istream& in, std::vector<std::string>* columns = nullptr);

std::vector<FamilyRecord> read_monic_cache(std::istream& in, CacheMeta* meta = nullptr);

// Histograms and conductor sums from any cache kind.
FamilyStats load_cache_stats(const std::string& path, CacheMeta* meta = nullptr);

long double log_abs_big(const BigInt& v);

}  // namespace arithstat
