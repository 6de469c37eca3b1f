#pragma once

// Dense complex linear algebra and quantum-state carriers shared by every
// other module. Storage is Eigen (column-major internally); indexing of
// composite systems follows the row-major convention |i>|j> -> i*dB + j.

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace mubent {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using Rng = std::mt19937_64;

/// Global numerical tolerances. One record; pass a modified copy to override.
struct Tolerances {
    double structural = 1e-10;  // hermiticity, trace, normalization, orthonormality
    double spectral = 1e-9;     // eigenvalue / SVD derived quantities
    std::size_t max_entries = 100'000'000;
};

inline constexpr Tolerances kDefaultTolerances{};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b,
                   const Tolerances& tol = kDefaultTolerances);
ComplexMatrix dagger(const ComplexMatrix& a);
bool all_finite(const ComplexMatrix& a);

/// Largest entrywise |U^dagger U - I|.
double unitarity_defect(const ComplexMatrix& u);

class DensityMatrix;

/// Normalized state vector.
class PureState {
public:
    /// Throws DomainError unless ||amplitudes|| = 1 within tolerance.
    explicit PureState(ComplexVector amplitudes, const Tolerances& tol = kDefaultTolerances);

    /// Rescales a nonzero vector to unit norm.
    static PureState normalized(const ComplexVector& v);
    static PureState basis_state(std::size_t dim, std::size_t index);

    std::size_t dim() const noexcept { return static_cast<std::size_t>(amps_.size()); }
    const ComplexVector& amplitudes() const noexcept { return amps_; }
    Complex operator[](std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }

    DensityMatrix projector() const;

private:
    ComplexVector amps_;
};

/// Tensor product of two pure states.
PureState tensor(const PureState& a, const PureState& b);

/// |<psi|phi>|; equals 1 for states that agree up to a global phase.
double overlap_modulus(const PureState& psi, const PureState& phi);

struct ValidationReport {
    double hermiticity_defect = 0.0;
    double trace_defect = 0.0;
    double min_eigenvalue = 0.0;
    bool accepted = false;
};

/// Throws DomainError on non-square input.
ValidationReport validate_density_matrix(const ComplexMatrix& m,
                                         const Tolerances& tol = kDefaultTolerances);

class DensityMatrix {
public:
    /// Validating constructor; throws DomainError with the defects on rejection.
    explicit DensityMatrix(ComplexMatrix m, const Tolerances& tol = kDefaultTolerances);

    static DensityMatrix maximally_mixed(std::size_t dim);
    /// p*a + (1-p)*b for p in [0, 1].
    static DensityMatrix mixture(double p, const DensityMatrix& a, const DensityMatrix& b);
    /// Weighted sum of states; weights non-negative, summing to 1.
    static DensityMatrix mixture(std::span<const double> weights,
                                 std::span<const DensityMatrix> states);
    static DensityMatrix product(const DensityMatrix& a, const DensityMatrix& b);

    std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
    const ComplexMatrix& matrix() const noexcept { return m_; }

    /// U rho U^dagger for unitary U (checked to 1e-10).
    DensityMatrix conjugated_by(const ComplexMatrix& u) const;

private:
    struct Trusted {};
    DensityMatrix(ComplexMatrix m, Trusted) : m_(std::move(m)) {}
    friend class PureState;

    ComplexMatrix m_;
};

/// Orthonormal basis; vector i is column i of a d x d unitary.
class Basis {
public:
    /// Throws DomainError unless the columns are orthonormal within tolerance.
    explicit Basis(ComplexMatrix vectors, const Tolerances& tol = kDefaultTolerances);

    static Basis computational(std::size_t dim);

    std::size_t dim() const noexcept { return static_cast<std::size_t>(u_.rows()); }
    const ComplexMatrix& matrix() const noexcept { return u_; }
    ComplexVector vector(std::size_t i) const { return u_.col(static_cast<Eigen::Index>(i)); }

    Basis conjugate() const;

private:
    ComplexMatrix u_;
};

/// Largest entrywise |V^dagger V - I| over the columns of V.
double orthonormality_defect(const ComplexMatrix& vectors);

struct SchmidtDecomposition {
    std::size_t rank = 0;
    std::vector<double> coefficients;  // descending, all > 1e-12
    Basis basis_a;                     // first `rank` columns carry the Schmidt vectors
    Basis basis_b;
};

/// Throws DomainError when dA*dB != psi.dim().
SchmidtDecomposition schmidt_decompose(const PureState& psi, std::size_t dA, std::size_t dB);

/// sum_i lambda_i |i_a>|i_b>.
ComplexVector reconstruct(const SchmidtDecomposition& s);

/// Independent standard complex Gaussian amplitudes, normalized.
PureState random_pure_state(std::size_t dim, std::uint64_t seed);
PureState random_pure_state(std::size_t dim, Rng& rng);

/// Haar-distributed unitary via QR of a complex Gaussian matrix, with the
/// phases of diag(R) absorbed into Q.
ComplexMatrix random_unitary(std::size_t dim, std::uint64_t seed);
ComplexMatrix random_unitary(std::size_t dim, Rng& rng);

}  // namespace mubent
