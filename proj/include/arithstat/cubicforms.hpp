#pragma once

// Binary cubic forms a x^3 + b x^2 y + c x y^2 + d y^3 and the cubic fields
// they parametrize.

#include <array>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "arithstat/arith.hpp"
#include "arithstat/family.hpp"
#include "arithstat/polyfactor.hpp"
#include "arithstat/symbols.hpp"

namespace arithstat {

struct BinaryCubicForm {
    i64 a = 0, b = 0, c = 0, d = 0;

    i64 eval(i64 x, i64 y) const;  // may overflow for large inputs; see eval128
    i128 eval128(i64 x, i64 y) const;
    std::string to_string() const;
    friend bool operator==(const BinaryCubicForm&, const BinaryCubicForm&) = default;
    friend auto operator<=>(const BinaryCubicForm&, const BinaryCubicForm&) = default;
};

i128 disc_cubic(const BinaryCubicForm& f);

// g = {p, q, r, s} is the matrix [[p, q], [r, s]] in GL2(Z);
// (g.f)(x, y) = f((x, y) g) / det g.
using Mat2 = std::array<i64, 4>;
BinaryCubicForm twisted_action(const BinaryCubicForm& f, const Mat2& g);

bool is_DH_maximal(const BinaryCubicForm& f, u64 p);
// Oracle: tests every point of P^1(Z/p^2) instead of only multiple roots mod p.
bool is_DH_maximal_bruteforce(const BinaryCubicForm& f, u64 p);
// Maximal forms among all p^8 forms mod p^2; the fraction is (1 - p^-2)(1 - p^-3).
MaximalCensus cubic_maximal_census_mod_p2(u64 p);

// Projective factorization of the form mod p, with multiplicities.
SplittingSymbol binary_form_shape(const std::vector<u64>& coeffs_high, u64 p);
SplittingSymbol splitting_symbol_cubic(const BinaryCubicForm& f, u64 p);

// Splitting code at a prime p not dividing disc.
SymbolCode cubic_code_unramified(i64 a, i64 b, i64 c, i64 d, i128 disc, u64 p);

// Type of a form over F_p with nonzero discriminant, from its projective root count.
CycleType projective_type_fp(u64 a, u64 b, u64 c, u64 d, u64 p);

struct Hessian {
    i128 P, Q, R;
};
Hessian hessian(const BinaryCubicForm& f);

bool is_irreducible_cubic_form(const BinaryCubicForm& f);

// Reduction: Hessian reduced (disc > 0) or complex root in the closed
// fundamental domain (disc < 0), leading coefficient positive.
bool is_reduced(const BinaryCubicForm& f);
// The lexicographically least reduced form in the GL2(Z)-orbit; f irreducible.
BinaryCubicForm canonical_form(const BinaryCubicForm& f);
// f reduced and lexicographically least among its reduced neighbours.
bool is_canonical(const BinaryCubicForm& f);

struct CubicFieldRecord {
    BinaryCubicForm form;
    i64 disc = 0;
    bool ntr = false;        // nowhere totally ramified
    i64 resolvent_disc = 0;  // fundamental discriminant of Q(sqrt disc) when ntr, else 0
    std::vector<SymbolCode> splitting;  // aligned with the cache primes
};

struct CubicEnumeration {
    i64 x = 0;
    std::vector<u64> primes;
    std::vector<CubicFieldRecord> records;  // sorted by (|disc|, disc, form)
    u64 candidates = 0;                     // reduced forms examined
};

// One record per GL2(Z)-orbit of irreducible maximal forms with 0 < |disc| < x.
CubicEnumeration enumerate_cubic_fields(i64 x, u64 pmax = kDefaultPrimeCache, bool parallel = true);
FamilyStats cubic_family_stats(const CubicEnumeration& e);

i64 quadratic_resolvent_disc(const CubicFieldRecord& r);
CycleType resolvent_splitting(const CycleType& sigma3);

struct CubicTabulation {
    i64 x = 0;
    std::unordered_map<i64, int> ntr_by_disc;
};
CubicTabulation tabulate(const CubicEnumeration& e);
int cl3(i64 d, const CubicTabulation& tab);

// Predicted c_{p,tau} for cubic fields: |tau|/6 * p^2/(p^2+p+1).
std::map<std::string, Rational> cubic_predicted(u64 p);

struct CubicBruteForce {
    u64 p = 0;
    std::map<CycleType, u64> counts;
    u64 singular = 0;
};
CubicBruteForce cubic_bruteforce_fp(u64 p);

}  // namespace arithstat
