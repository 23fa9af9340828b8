#include "arithstat/finitefield.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace arithstat {

namespace {

FpPoly digits_to_poly(u64 v, u64 p, int k) {
    FpPoly f(k, 0);
    for (int i = 0; i < k; ++i) {
        f[i] = v % p;
        v /= p;
    }
    return f;
}

u64 poly_to_digits(const FpPoly& f, u64 p) {
    u64 v = 0;
    for (size_t i = f.size(); i-- > 0;) v = v * p + f[i];
    return v;
}

}  // namespace

FiniteField::FiniteField(u64 p, int k) : p_(p), k_(k) {
    if (!is_prime_u64(p) || k < 1) fail(ErrorKind::InvalidArgument, "finite field needs a prime and k >= 1");
    u64 q = 1;
    for (int i = 0; i < k; ++i) q *= p;
    if (q >= (1u << 16)) fail(ErrorKind::InvalidArgument, "finite field too large for tables");
    q_ = static_cast<Elt>(q);
    // first monic irreducible of degree k in digit order
    for (u64 tail = 0;; ++tail) {
        FpPoly f = digits_to_poly(tail, p, k);
        f.push_back(1);
        if (k == 1 || fp::is_irreducible(f, p)) {
            modulus_ = f;
            break;
        }
    }
    add_.resize(static_cast<size_t>(q) * q);
    mul_.resize(static_cast<size_t>(q) * q);
    neg_.resize(q);
    std::vector<FpPoly> polys(q);
    for (u64 a = 0; a < q; ++a) polys[a] = digits_to_poly(a, p, k);
    for (u64 a = 0; a < q; ++a) {
        FpPoly n(k);
        for (int i = 0; i < k; ++i) n[i] = (p - polys[a][i]) % p;
        neg_[a] = static_cast<std::uint16_t>(poly_to_digits(n, p));
        for (u64 b = 0; b < q; ++b) {
            FpPoly s(k);
            for (int i = 0; i < k; ++i) s[i] = (polys[a][i] + polys[b][i]) % p;
            add_[a * q + b] = static_cast<std::uint16_t>(poly_to_digits(s, p));
            if (b < a) {
                mul_[a * q + b] = mul_[b * q + a];
                continue;
            }
            FpPoly m = fp::rem(fp::mul(polys[a], polys[b], p), modulus_, p);
            m.resize(k, 0);
            mul_[a * q + b] = static_cast<std::uint16_t>(poly_to_digits(m, p));
        }
    }
}

FiniteField::Elt FiniteField::pow(Elt a, u64 e) const {
    Elt r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

const FiniteField& finite_field(u64 p, int k) {
    static std::mutex mu;
    static std::map<std::pair<u64, int>, std::unique_ptr<FiniteField>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{p, k}];
    if (!slot) slot = std::make_unique<FiniteField>(p, k);
    return *slot;
}

std::vector<std::vector<FiniteField::Elt>> projective_points(const FiniteField& F, int m) {
    std::vector<std::vector<FiniteField::Elt>> out;
    const FiniteField::Elt q = F.size();
    for (int lead = 0; lead <= m; ++lead) {
        // coordinates before lead are 0, lead is 1, the rest free
        int free = m - lead;
        u64 count = 1;
        for (int i = 0; i < free; ++i) count *= q;
        for (u64 idx = 0; idx < count; ++idx) {
            std::vector<FiniteField::Elt> v(m + 1, 0);
            v[lead] = 1;
            u64 t = idx;
            for (int i = m; i > lead; --i) {
                v[i] = static_cast<FiniteField::Elt>(t % q);
                t /= q;
            }
            out.push_back(std::move(v));
        }
    }
    return out;
}

}  // namespace arithstat
