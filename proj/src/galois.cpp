#include "mubent/galois.hpp"

#include <array>
#include <string>

#include "mubent/errors.hpp"

namespace mubent {

namespace {

struct ShippedPolynomial {
    unsigned p;
    unsigned n;
    std::array<unsigned, 5> coeffs;  // c_0 .. c_n, monic
};

// Irreducible monic polynomials over F_p, lowest-degree coefficient first.
constexpr std::array<ShippedPolynomial, 8> kPolynomials{{
    {3, 2, {1, 0, 1}},        // x^2 + 1
    {5, 2, {2, 0, 1}},        // x^2 + 2
    {3, 3, {1, 2, 0, 1}},     // x^3 + 2x + 1
    {7, 2, {1, 0, 1}},        // x^2 + 1
    {3, 4, {2, 1, 0, 0, 1}},  // x^4 + x + 2
    {11, 2, {1, 0, 1}},       // x^2 + 1
    {5, 3, {1, 1, 0, 1}},     // x^3 + x + 1
    {13, 2, {11, 0, 1}},      // x^2 - 2
}};

std::vector<unsigned> to_digits(unsigned v, unsigned p, unsigned n) {
    std::vector<unsigned> d(n);
    for (unsigned k = 0; k < n; ++k) {
        d[k] = v % p;
        v /= p;
    }
    return d;
}

unsigned from_digits(const std::vector<unsigned>& d, unsigned p) {
    unsigned v = 0;
    for (auto it = d.rbegin(); it != d.rend(); ++it) v = v * p + *it;
    return v;
}

// Product of two reduced polynomials modulo the monic `modulus`.
std::vector<unsigned> poly_mulmod(const std::vector<unsigned>& a, const std::vector<unsigned>& b,
                                  const std::vector<unsigned>& modulus, unsigned p) {
    const unsigned n = static_cast<unsigned>(modulus.size()) - 1;
    std::vector<unsigned> prod(2 * n, 0);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    for (unsigned deg = 2 * n - 1; deg >= n; --deg) {
        const unsigned c = prod[deg];
        if (c == 0) continue;
        // x^deg = -(m_0 + ... + m_{n-1} x^{n-1}) x^{deg-n}
        for (unsigned k = 0; k < n; ++k) {
            prod[deg - n + k] = (prod[deg - n + k] + (p - c) * modulus[k]) % p;
        }
        prod[deg] = 0;
    }
    prod.resize(n);
    return prod;
}

}  // namespace

bool is_prime(unsigned long long v) {
    if (v < 2) return false;
    for (unsigned long long f = 2; f * f <= v; ++f)
        if (v % f == 0) return false;
    return true;
}

PrimePower factor_prime_power(unsigned long long d) {
    if (d < 2) return {};
    unsigned long long p = 2;
    while (d % p != 0) ++p;
    unsigned n = 0;
    while (d % p == 0) {
        d /= p;
        ++n;
    }
    if (d != 1) return {};
    return {static_cast<unsigned>(p), n};
}

FieldElement FieldTable::pow(FieldElement a, unsigned e) const {
    FieldElement r = 1;
    for (unsigned k = 0; k < e; ++k) r = mul(r, a);
    return r;
}

FieldTable gf_build(unsigned p, unsigned n) {
    if (!is_prime(p)) throw UnsupportedError("gf_build: characteristic " + std::to_string(p) + " is not prime");
    if (n == 0) throw UnsupportedError("gf_build: degree must be at least 1");

    std::vector<unsigned> modulus;
    if (n == 1) {
        if (p > 256) throw UnsupportedError("gf_build: field size above 256");
        modulus = {0, 1};  // x
    } else {
        for (const auto& sp : kPolynomials) {
            if (sp.p == p && sp.n == n) modulus.assign(sp.coeffs.begin(), sp.coeffs.begin() + n + 1);
        }
        if (modulus.empty()) {
            throw UnsupportedError("gf_build: no shipped irreducible polynomial for GF(" + std::to_string(p) +
                                   "^" + std::to_string(n) + ")");
        }
    }

    FieldTable t;
    t.p_ = p;
    t.n_ = n;
    t.q_ = 1;
    for (unsigned k = 0; k < n; ++k) t.q_ *= p;
    t.modulus_ = modulus;
    const unsigned q = t.q_;

    std::vector<std::vector<unsigned>> digits(q);
    for (unsigned v = 0; v < q; ++v) digits[v] = to_digits(v, p, n);

    t.add_.resize(q * q);
    t.mul_.resize(q * q);
    t.neg_.resize(q);
    for (unsigned a = 0; a < q; ++a) {
        std::vector<unsigned> s(n), m(n);
        for (unsigned k = 0; k < n; ++k) m[k] = (p - digits[a][k]) % p;
        t.neg_[a] = static_cast<FieldElement>(from_digits(m, p));
        for (unsigned b = 0; b < q; ++b) {
            for (unsigned k = 0; k < n; ++k) s[k] = (digits[a][k] + digits[b][k]) % p;
            t.add_[a * q + b] = static_cast<FieldElement>(from_digits(s, p));
            t.mul_[a * q + b] = static_cast<FieldElement>(from_digits(poly_mulmod(digits[a], digits[b], modulus, p), p));
        }
    }

    // tr(a) = a + a^p + ... + a^{p^{n-1}}
    t.trace_.resize(q);
    for (unsigned a = 0; a < q; ++a) {
        FieldElement acc = 0;
        FieldElement frob = static_cast<FieldElement>(a);
        for (unsigned k = 0; k < n; ++k) {
            acc = t.add(acc, frob);
            frob = t.pow(frob, p);
        }
        t.trace_[a] = acc;
    }
    return t;
}

}  // namespace mubent
