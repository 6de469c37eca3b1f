#include "mubent/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mubent/errors.hpp"

namespace mubent {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerances& tol) {
    const auto rows = static_cast<std::size_t>(a.rows()) * static_cast<std::size_t>(b.rows());
    const auto cols = static_cast<std::size_t>(a.cols()) * static_cast<std::size_t>(b.cols());
    if (rows != 0 && cols > tol.max_entries / rows) {
        throw SizeError("kron: result would have " + std::to_string(rows) + "x" +
                        std::to_string(cols) + " entries, above the configured cap");
    }
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrix dagger(const ComplexMatrix& a) { return a.adjoint(); }

bool all_finite(const ComplexMatrix& a) {
    return a.allFinite();
}

double unitarity_defect(const ComplexMatrix& u) {
    if (u.rows() != u.cols()) return INFINITY;
    return (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------

PureState::PureState(ComplexVector amplitudes, const Tolerances& tol) : amps_(std::move(amplitudes)) {
    if (amps_.size() == 0) throw DomainError("PureState: empty amplitude vector");
    if (!amps_.allFinite()) throw DomainError("PureState: non-finite amplitude");
    const double norm = amps_.norm();
    if (std::abs(norm - 1.0) > tol.structural) {
        std::ostringstream os;
        os << "PureState: norm " << norm << " differs from 1";
        throw DomainError(os.str());
    }
}

PureState PureState::normalized(const ComplexVector& v) {
    const double norm = v.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) throw DomainError("PureState: cannot normalize zero vector");
    return PureState(v / norm);
}

PureState PureState::basis_state(std::size_t dim, std::size_t index) {
    if (index >= dim) throw DomainError("PureState: basis index out of range");
    ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return PureState(std::move(v));
}

DensityMatrix PureState::projector() const {
    return DensityMatrix(amps_ * amps_.adjoint(), DensityMatrix::Trusted{});
}

PureState tensor(const PureState& a, const PureState& b) {
    ComplexVector v(a.amplitudes().size() * b.amplitudes().size());
    for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i) {
        v.segment(i * b.amplitudes().size(), b.amplitudes().size()) = a.amplitudes()(i) * b.amplitudes();
    }
    return PureState::normalized(v);
}

double overlap_modulus(const PureState& psi, const PureState& phi) {
    if (psi.dim() != phi.dim()) throw DomainError("overlap_modulus: dimension mismatch");
    return std::abs(psi.amplitudes().dot(phi.amplitudes()));
}

// ---------------------------------------------------------------------------

ValidationReport validate_density_matrix(const ComplexMatrix& m, const Tolerances& tol) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw DomainError("validate_density_matrix: matrix must be square and non-empty");
    }
    ValidationReport r;
    if (!m.allFinite()) {
        r.hermiticity_defect = r.trace_defect = INFINITY;
        r.min_eigenvalue = -INFINITY;
        return r;
    }
    r.hermiticity_defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
    r.trace_defect = std::abs(m.trace() - Complex(1.0, 0.0));
    const ComplexMatrix herm = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(herm, Eigen::EigenvaluesOnly);
    r.min_eigenvalue = es.eigenvalues().minCoeff();
    r.accepted = r.hermiticity_defect <= tol.structural && r.trace_defect <= tol.structural &&
                 r.min_eigenvalue >= -tol.spectral;
    return r;
}

DensityMatrix::DensityMatrix(ComplexMatrix m, const Tolerances& tol) : m_(std::move(m)) {
    const auto r = validate_density_matrix(m_, tol);
    if (!r.accepted) {
        std::ostringstream os;
        os << "DensityMatrix: rejected (hermiticity defect " << r.hermiticity_defect
           << ", trace defect " << r.trace_defect << ", min eigenvalue " << r.min_eigenvalue << ")";
        throw DomainError(os.str());
    }
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
    if (dim == 0) throw DomainError("maximally_mixed: dim must be positive");
    const auto n = static_cast<Eigen::Index>(dim);
    return DensityMatrix(ComplexMatrix::Identity(n, n) / static_cast<double>(dim), Trusted{});
}

DensityMatrix DensityMatrix::mixture(double p, const DensityMatrix& a, const DensityMatrix& b) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("mixture: weight outside [0, 1]");
    if (a.dim() != b.dim()) throw DomainError("mixture: dimension mismatch");
    return DensityMatrix(p * a.m_ + (1.0 - p) * b.m_, Trusted{});
}

DensityMatrix DensityMatrix::mixture(std::span<const double> weights,
                                     std::span<const DensityMatrix> states) {
    if (weights.size() != states.size() || states.empty()) {
        throw DomainError("mixture: weights and states must be non-empty and of equal length");
    }
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) throw DomainError("mixture: negative weight");
        total += w;
    }
    if (std::abs(total - 1.0) > kDefaultTolerances.structural) {
        throw DomainError("mixture: weights do not sum to 1");
    }
    ComplexMatrix acc = ComplexMatrix::Zero(states[0].m_.rows(), states[0].m_.cols());
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (states[i].dim() != states[0].dim()) throw DomainError("mixture: dimension mismatch");
        acc += weights[i] * states[i].m_;
    }
    return DensityMatrix(std::move(acc), Trusted{});
}

DensityMatrix DensityMatrix::product(const DensityMatrix& a, const DensityMatrix& b) {
    return DensityMatrix(kron(a.m_, b.m_), Trusted{});
}

DensityMatrix DensityMatrix::conjugated_by(const ComplexMatrix& u) const {
    if (u.rows() != m_.rows() || u.cols() != m_.cols()) {
        throw DomainError("conjugated_by: unitary dimension mismatch");
    }
    if (unitarity_defect(u) > kDefaultTolerances.structural) {
        throw DomainError("conjugated_by: operator is not unitary");
    }
    return DensityMatrix(u * m_ * u.adjoint(), Trusted{});
}

// ---------------------------------------------------------------------------

double orthonormality_defect(const ComplexMatrix& vectors) {
    return (vectors.adjoint() * vectors -
            ComplexMatrix::Identity(vectors.cols(), vectors.cols()))
        .cwiseAbs()
        .maxCoeff();
}

Basis::Basis(ComplexMatrix vectors, const Tolerances& tol) : u_(std::move(vectors)) {
    if (u_.rows() != u_.cols() || u_.rows() == 0) {
        throw DomainError("Basis: expected d vectors of dimension d");
    }
    const double defect = orthonormality_defect(u_);
    if (!(defect <= tol.structural)) {
        std::ostringstream os;
        os << "Basis: orthonormality defect " << defect;
        throw DomainError(os.str());
    }
}

Basis Basis::computational(std::size_t dim) {
    if (dim == 0) throw DomainError("Basis: dim must be positive");
    const auto n = static_cast<Eigen::Index>(dim);
    return Basis(ComplexMatrix::Identity(n, n));
}

Basis Basis::conjugate() const { return Basis(u_.conjugate()); }

// ---------------------------------------------------------------------------

SchmidtDecomposition schmidt_decompose(const PureState& psi, std::size_t dA, std::size_t dB) {
    if (dA == 0 || dB == 0 || dA * dB != psi.dim()) {
        throw DomainError("schmidt_decompose: dA*dB must equal the state dimension");
    }
    const auto ra = static_cast<Eigen::Index>(dA);
    const auto rb = static_cast<Eigen::Index>(dB);
    ComplexMatrix m(ra, rb);
    for (Eigen::Index i = 0; i < ra; ++i)
        for (Eigen::Index j = 0; j < rb; ++j) m(i, j) = psi.amplitudes()(i * rb + j);

    // psi = sum_k s_k u_k (x) conj(v_k) for M = U S V^dagger.
    Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    std::vector<double> coeffs;
    for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
        const double s = svd.singularValues()(k);
        if (s > 1e-12) coeffs.push_back(s);
    }
    const std::size_t rank = coeffs.size();
    return SchmidtDecomposition{
        .rank = rank,
        .coefficients = std::move(coeffs),
        .basis_a = Basis(svd.matrixU()),
        .basis_b = Basis(svd.matrixV().conjugate()),
    };
}

ComplexVector reconstruct(const SchmidtDecomposition& s) {
    const auto da = s.basis_a.matrix().rows();
    const auto db = s.basis_b.matrix().rows();
    ComplexVector out = ComplexVector::Zero(da * db);
    for (std::size_t k = 0; k < s.rank; ++k) {
        const auto a = s.basis_a.matrix().col(static_cast<Eigen::Index>(k));
        const auto b = s.basis_b.matrix().col(static_cast<Eigen::Index>(k));
        for (Eigen::Index i = 0; i < da; ++i) out.segment(i * db, db) += s.coefficients[k] * a(i) * b;
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

ComplexMatrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix g(rows, cols);
    // Fill in row-major order so the draw sequence is layout-independent.
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(i, j) = Complex(re, im);
        }
    return g;
}

}  // namespace

PureState random_pure_state(std::size_t dim, Rng& rng) {
    if (dim == 0) throw DomainError("random_pure_state: dim must be positive");
    ComplexVector v = gaussian_matrix(static_cast<Eigen::Index>(dim), 1, rng).col(0);
    return PureState::normalized(v);
}

PureState random_pure_state(std::size_t dim, std::uint64_t seed) {
    Rng rng(seed);
    return random_pure_state(dim, rng);
}

ComplexMatrix random_unitary(std::size_t dim, Rng& rng) {
    if (dim == 0) throw DomainError("random_unitary: dim must be positive");
    const auto n = static_cast<Eigen::Index>(dim);
    const ComplexMatrix g = gaussian_matrix(n, n, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < n; ++k) {
        const Complex rkk = r(k, k);
        const double mod = std::abs(rkk);
        q.col(k) *= (mod > 0.0 ? rkk / mod : Complex(1.0, 0.0));
    }
    return q;
}

ComplexMatrix random_unitary(std::size_t dim, std::uint64_t seed) {
    Rng rng(seed);
    return random_unitary(dim, rng);
}

}  // namespace mubent
