#include "mubent/mubs.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string_view>

#include "mubent/errors.hpp"
#include "mubent/galois.hpp"

namespace mubent {

MubVerificationReport verify_mub_set(std::span<const ComplexMatrix> candidates, double tolerance) {
    MubVerificationReport rep;
    if (candidates.empty()) throw DomainError("verify_mub_set: no bases supplied");
    const Eigen::Index d = candidates.front().rows();
    for (const auto& c : candidates) {
        if (c.rows() != d || c.cols() != d) throw DomainError("verify_mub_set: bases differ in dimension");
    }
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        const double defect = orthonormality_defect(candidates[k]);
        if (!(defect <= rep.worst_orthonormality_defect)) rep.worst_orthonormality_defect = defect;
        if (!(defect <= tolerance) && !rep.non_orthonormal_basis) rep.non_orthonormal_basis = k;
    }
    const double target = 1.0 / static_cast<double>(d);
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        for (std::size_t l = k + 1; l < candidates.size(); ++l) {
            const ComplexMatrix g = candidates[k].adjoint() * candidates[l];
            for (Eigen::Index i = 0; i < d; ++i) {
                for (Eigen::Index j = 0; j < d; ++j) {
                    const double defect = std::abs(std::norm(g(i, j)) - target);
                    if (!(defect <= rep.worst_unbiasedness_defect)) {
                        rep.worst_unbiasedness_defect = defect;
                        if (!(defect <= tolerance)) {
                            rep.offender = MubVerificationReport::Offender{
                                k, l, static_cast<std::size_t>(i), static_cast<std::size_t>(j)};
                        }
                    }
                }
            }
        }
    }
    rep.pass = rep.worst_orthonormality_defect <= tolerance && rep.worst_unbiasedness_defect <= tolerance;
    return rep;
}

MubSet::MubSet(std::vector<Basis> bases, double tolerance) : bases_(std::move(bases)) {
    if (bases_.empty()) throw DomainError("MubSet: at least one basis required");
    if (bases_.size() > bases_.front().dim() + 1) {
        throw DomainError("MubSet: more than d+1 bases cannot be mutually unbiased");
    }
    std::vector<ComplexMatrix> mats;
    mats.reserve(bases_.size());
    for (const auto& b : bases_) mats.push_back(b.matrix());
    const auto rep = verify_mub_set(mats, tolerance);
    if (!rep.pass) {
        std::ostringstream os;
        os << "MubSet: bases are not mutually unbiased (orthonormality defect "
           << rep.worst_orthonormality_defect << ", unbiasedness defect " << rep.worst_unbiasedness_defect << ")";
        throw DomainError(os.str());
    }
}

MubSet MubSet::prefix(std::size_t m) const {
    if (m == 0 || m > size()) throw DomainError("MubSet::prefix: m outside [1, size]");
    return MubSet(std::vector<Basis>(bases_.begin(), bases_.begin() + static_cast<std::ptrdiff_t>(m)));
}

ComplexMatrix canonical_phase(ComplexMatrix vectors) {
    for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
        for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
            const Complex z = vectors(r, c);
            const double mod = std::abs(z);
            if (mod > 1e-12) {
                vectors.col(c) *= std::conj(z) / mod;
                vectors(r, c) = Complex(std::abs(vectors(r, c)), 0.0);
                break;
            }
        }
    }
    return vectors;
}

namespace {

Basis make_basis(ComplexMatrix m) { return Basis(canonical_phase(std::move(m))); }

Complex root_of_unity(std::size_t k, std::size_t d) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k % d) / static_cast<double>(d);
    return std::polar(1.0, angle);
}

MubSet qubit_set() {
    const double s = 1.0 / std::sqrt(2.0);
    const Complex i(0.0, 1.0);
    ComplexMatrix b2(2, 2), b3(2, 2);
    b2 << s, s, s, -s;
    b3 << s, s, i * s, -i * s;
    return MubSet({Basis::computational(2), make_basis(b2), make_basis(b3)});
}

// Vector i of basis k has components w^{k j^2 + i j} / sqrt(p).
MubSet odd_prime_set(std::size_t p) {
    std::vector<Basis> bases{Basis::computational(p)};
    const double norm = 1.0 / std::sqrt(static_cast<double>(p));
    const auto n = static_cast<Eigen::Index>(p);
    for (std::size_t k = 0; k < p; ++k) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t j = 0; j < p; ++j)
                m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) =
                    norm * root_of_unity((k * j % p * j + i * j) % p, p);
        bases.push_back(make_basis(std::move(m)));
    }
    return MubSet(std::move(bases));
}

// Basis a, vector b: components w_p^{tr(a j^2 + b j)} / sqrt(q), j over F_q.
MubSet field_set(unsigned p, unsigned n) {
    const FieldTable f = gf_build(p, n);
    const unsigned q = f.size();
    const auto dim = static_cast<Eigen::Index>(q);
    const double norm = 1.0 / std::sqrt(static_cast<double>(q));
    std::vector<Basis> bases{Basis::computational(q)};
    for (unsigned a = 0; a < q; ++a) {
        ComplexMatrix m(dim, dim);
        for (unsigned b = 0; b < q; ++b) {
            for (unsigned j = 0; j < q; ++j) {
                const auto jj = static_cast<FieldElement>(j);
                const FieldElement arg = f.add(f.mul(static_cast<FieldElement>(a), f.mul(jj, jj)),
                                               f.mul(static_cast<FieldElement>(b), jj));
                m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(b)) = norm * root_of_unity(f.trace(arg), p);
            }
        }
        bases.push_back(make_basis(std::move(m)));
    }
    return MubSet(std::move(bases));
}

// Two-qubit stabilizer groups: each basis is the joint eigenbasis of two
// commuting Pauli strings, vectors ordered by eigenvalue signs (++, +-, -+, --).
constexpr std::array<std::array<std::string_view, 2>, 5> kTwoQubitStabilizers{{
    {"ZI", "IZ"},
    {"XI", "IX"},
    {"YI", "IY"},
    {"XZ", "ZY"},
    {"YZ", "ZX"},
}};

ComplexMatrix pauli(char c) {
    const Complex i(0.0, 1.0);
    ComplexMatrix m(2, 2);
    switch (c) {
        case 'I': m << 1, 0, 0, 1; break;
        case 'X': m << 0, 1, 1, 0; break;
        case 'Y': m << 0, -i, i, 0; break;
        case 'Z': m << 1, 0, 0, -1; break;
        default: throw DomainError("pauli: unknown label");
    }
    return m;
}

MubSet two_qubit_set() {
    std::vector<Basis> bases;
    const ComplexMatrix id = ComplexMatrix::Identity(4, 4);
    for (const auto& gens : kTwoQubitStabilizers) {
        const ComplexMatrix g1 = kron(pauli(gens[0][0]), pauli(gens[0][1]));
        const ComplexMatrix g2 = kron(pauli(gens[1][0]), pauli(gens[1][1]));
        ComplexMatrix m(4, 4);
        int col = 0;
        for (double s1 : {1.0, -1.0}) {
            for (double s2 : {1.0, -1.0}) {
                const ComplexMatrix proj = 0.25 * (id + s1 * g1) * (id + s2 * g2);
                Eigen::Index best = 0;
                proj.colwise().norm().maxCoeff(&best);
                m.col(col++) = proj.col(best).normalized();
            }
        }
        bases.push_back(make_basis(std::move(m)));
    }
    return MubSet(std::move(bases));
}

}  // namespace

bool mub_construction_supported(std::size_t d) {
    if (d == 2 || d == 4) return true;
    const auto pp = factor_prime_power(d);
    if (pp.p == 0 || pp.p == 2) return false;
    if (pp.n == 1) return true;
    return d <= 169 && (d == 9 || d == 25 || d == 27 || d == 49 || d == 81 || d == 121 || d == 125 || d == 169);
}

MubSet construct_mub_set(std::size_t d) {
    if (!mub_construction_supported(d)) {
        throw UnsupportedError("construct_mub_set: no built-in complete set for d=" + std::to_string(d) +
                               "; supported d are 2, 4, odd primes and odd prime powers up to 169. "
                               "Use fourier_pair for two bases or import a MUB file.");
    }
    if (d == 2) return qubit_set();
    if (d == 4) return two_qubit_set();
    const auto pp = factor_prime_power(d);
    if (pp.n == 1) return odd_prime_set(d);
    return field_set(pp.p, pp.n);
}

MubSet fourier_pair(std::size_t d) {
    if (d < 2) throw DomainError("fourier_pair: d must be at least 2");
    const auto n = static_cast<Eigen::Index>(d);
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    ComplexMatrix f(n, n);
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t i = 0; i < d; ++i)
            f(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) = norm * root_of_unity(k * i, d);
    return MubSet({Basis::computational(d), make_basis(std::move(f))});
}

MubSet conjugate_mub_set(const MubSet& m) {
    std::vector<Basis> out;
    out.reserve(m.size());
    for (const auto& b : m.bases()) out.push_back(b.conjugate());
    return MubSet(std::move(out));
}

double quartic_sum(const PureState& psi, const MubSet& m) {
    if (psi.dim() != m.dim()) throw DomainError("quartic_sum: state and bases differ in dimension");
    double acc = 0.0;
    for (const auto& b : m.bases()) {
        const ComplexVector amps = b.matrix().adjoint() * psi.amplitudes();
        for (Eigen::Index i = 0; i < amps.size(); ++i) {
            const double p = std::norm(amps(i));
            acc += p * p;
        }
    }
    return acc;
}

}  // namespace mubent
