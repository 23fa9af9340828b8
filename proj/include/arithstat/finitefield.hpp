#pragma once

// Small finite fields F_{p^k} with full addition and multiplication tables,
// used by the point-census oracles.

#include <cstdint>
#include <vector>

#include "arithstat/arith.hpp"
#include "arithstat/polyfactor.hpp"

namespace arithstat {

class FiniteField {
public:
    using Elt = std::uint32_t;  // base-p digits of the polynomial representative

    // q = p^k must stay below 2^16.
    FiniteField(u64 p, int k);

    u64 characteristic() const { return p_; }
    int degree() const { return k_; }
    Elt size() const { return q_; }
    const FpPoly& modulus() const { return modulus_; }

    Elt add(Elt a, Elt b) const { return add_[a * q_ + b]; }
    Elt mul(Elt a, Elt b) const { return mul_[a * q_ + b]; }
    Elt neg(Elt a) const { return neg_[a]; }
    Elt sub(Elt a, Elt b) const { return add(a, neg(b)); }
    Elt from_int(i64 v) const { return static_cast<Elt>(mod_signed(v, p_)); }
    Elt pow(Elt a, u64 e) const;

private:
    u64 p_;
    int k_;
    Elt q_;
    FpPoly modulus_;
    std::vector<std::uint16_t> add_, mul_, neg_;
};

// Shared, lazily built table for (p, k); thread safe.
const FiniteField& finite_field(u64 p, int k);

// Normalized representatives of P^m(F_q): first nonzero coordinate 1.
std::vector<std::vector<FiniteField::Elt>> projective_points(const FiniteField& F, int m);

}  // namespace arithstat
