#pragma once

// Table-driven arithmetic in GF(p^n), q = p^n <= 256.
//
// An element is an index in [0, q): its base-p digits are the coefficients
// c_0 + c_1 x + ... + c_{n-1} x^{n-1} of a polynomial reduced modulo a fixed
// irreducible monic polynomial. Index < p is the prime subfield.

#include <cstdint>
#include <vector>

namespace mubent {

using FieldElement = std::uint16_t;

class FieldTable {
public:
    unsigned characteristic() const noexcept { return p_; }
    unsigned degree() const noexcept { return n_; }
    unsigned size() const noexcept { return q_; }

    FieldElement add(FieldElement a, FieldElement b) const { return add_[a * q_ + b]; }
    FieldElement mul(FieldElement a, FieldElement b) const { return mul_[a * q_ + b]; }
    FieldElement neg(FieldElement a) const { return neg_[a]; }
    FieldElement pow(FieldElement a, unsigned e) const;
    /// Absolute trace to the prime field; the result is an index < p.
    FieldElement trace(FieldElement a) const { return trace_[a]; }

    /// Coefficients (lowest degree first) of the defining polynomial, leading 1 included.
    const std::vector<unsigned>& modulus() const noexcept { return modulus_; }

private:
    friend FieldTable gf_build(unsigned p, unsigned n);

    unsigned p_ = 0, n_ = 0, q_ = 0;
    std::vector<unsigned> modulus_;
    std::vector<FieldElement> add_, mul_, neg_, trace_;
};

/// Builds GF(p^n). n = 1 works for any prime p <= 256; n >= 2 needs an odd p with
/// p^n in {9, 25, 27, 49, 81, 121, 125, 169}, whose defining polynomials are
/// shipped. Throws UnsupportedError otherwise.
FieldTable gf_build(unsigned p, unsigned n);

bool is_prime(unsigned long long v);

struct PrimePower {
    unsigned p = 0;
    unsigned n = 0;
};

/// Returns {p, n} with d = p^n, or {0, 0} if d is not a prime power.
PrimePower factor_prime_power(unsigned long long d);

}  // namespace mubent
