#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mubent/qmath.hpp"

namespace mubent {

struct MubVerificationReport {
    bool pass = false;
    double worst_orthonormality_defect = 0.0;
    double worst_unbiasedness_defect = 0.0;

    /// Location of the worst unbiasedness defect (bases k != l, vectors i, j),
    /// filled only when that defect exceeds the tolerance.
    struct Offender {
        std::size_t basis_k, basis_l, vector_i, vector_j;
    };
    std::optional<Offender> offender;
    /// Index of the first basis that failed orthonormality, if any.
    std::optional<std::size_t> non_orthonormal_basis;
};

/// Checks orthonormality of every candidate basis and | |<i_k|j_l>|^2 - 1/d | for
/// every cross pair. Reports worst defects instead of stopping at the first.
/// Throws DomainError if the candidates do not share one dimension.
MubVerificationReport verify_mub_set(std::span<const ComplexMatrix> candidates,
                                     double tolerance = kDefaultTolerances.structural);

/// A pairwise mutually unbiased collection of m <= d+1 bases.
class MubSet {
public:
    /// Verifies the candidates; throws DomainError carrying the defects on failure.
    explicit MubSet(std::vector<Basis> bases, double tolerance = kDefaultTolerances.structural);

    std::size_t dim() const noexcept { return bases_.front().dim(); }
    std::size_t size() const noexcept { return bases_.size(); }
    bool complete() const noexcept { return size() == dim() + 1; }
    const Basis& operator[](std::size_t k) const { return bases_.at(k); }
    const std::vector<Basis>& bases() const noexcept { return bases_; }

    /// The first m bases (still mutually unbiased).
    MubSet prefix(std::size_t m) const;

private:
    std::vector<Basis> bases_;
};

/// Multiplies each column by a phase making its first nonzero entry real-positive.
ComplexMatrix canonical_phase(ComplexMatrix vectors);

/// Complete set of d+1 MUBs for d = 2, 4, any odd prime, or an odd prime power
/// <= 169. Throws UnsupportedError for any other d.
MubSet construct_mub_set(std::size_t d);

/// True iff construct_mub_set(d) is supported.
bool mub_construction_supported(std::size_t d);

/// Computational basis plus the discrete Fourier basis; any d >= 2.
MubSet fourier_pair(std::size_t d);

/// Entrywise complex conjugate of every basis vector.
MubSet conjugate_mub_set(const MubSet& m);

/// sum_k sum_i |<i_k|psi>|^4.
double quartic_sum(const PureState& psi, const MubSet& m);

}  // namespace mubent
