#include "mubent/kernels.hpp"

#include <cstdint>
#include <vector>

#include "mubent/errors.hpp"

namespace mubent::kernels {

namespace {

std::size_t ipow(std::size_t base, std::size_t exp) {
    std::size_t r = 1;
    for (std::size_t k = 0; k < exp; ++k) r *= base;
    return r;
}

void check_joint_inputs(const ComplexMatrix& rho, const ComplexMatrix& a, const ComplexMatrix& b) {
    if (rho.rows() != rho.cols() || rho.rows() != a.rows() * b.rows()) {
        throw DomainError("joint_probabilities: state dimension must equal dA*dB");
    }
}

void check_tensor(const ComplexVector& amps, std::size_t parties, std::size_t local_dim) {
    if (static_cast<std::size_t>(amps.size()) != ipow(local_dim, parties)) {
        throw DomainError("kernels: amplitude count does not match local_dim^parties");
    }
}

}  // namespace

bool digits_distinct(std::size_t index, std::size_t parties, std::size_t local_dim) {
    std::uint64_t seen = 0;
    for (std::size_t k = 0; k < parties; ++k) {
        const std::size_t digit = index % local_dim;
        index /= local_dim;
        const std::uint64_t bit = std::uint64_t{1} << digit;
        if (seen & bit) return false;
        seen |= bit;
    }
    return true;
}

// ---------------------------------------------------------------------------
// serial reference

namespace serial {

RealMatrix joint_probabilities(const ComplexMatrix& rho, const ComplexMatrix& basis_a,
                               const ComplexMatrix& basis_b) {
    check_joint_inputs(rho, basis_a, basis_b);
    const Eigen::Index da = basis_a.rows();
    const Eigen::Index db = basis_b.rows();
    RealMatrix p(da, db);
    ComplexVector v(da * db);
    for (Eigen::Index i = 0; i < da; ++i) {
        for (Eigen::Index j = 0; j < db; ++j) {
            for (Eigen::Index a = 0; a < da; ++a)
                for (Eigen::Index b = 0; b < db; ++b) v(a * db + b) = basis_a(a, i) * basis_b(b, j);
            Complex acc = 0.0;
            for (Eigen::Index r = 0; r < v.size(); ++r)
                for (Eigen::Index c = 0; c < v.size(); ++c) acc += std::conj(v(r)) * rho(r, c) * v(c);
            p(i, j) = acc.real();
        }
    }
    return p;
}

void apply_local(ComplexVector& amps, std::size_t parties, std::size_t local_dim,
                 std::size_t axis, const ComplexMatrix& op) {
    check_tensor(amps, parties, local_dim);
    const std::size_t d = local_dim;
    const std::size_t stride = ipow(d, parties - 1 - axis);
    const std::size_t outer = ipow(d, axis);
    std::vector<Complex> x(d);
    for (std::size_t o = 0; o < outer; ++o) {
        for (std::size_t in = 0; in < stride; ++in) {
            const std::size_t base = o * d * stride + in;
            for (std::size_t t = 0; t < d; ++t) x[t] = amps(static_cast<Eigen::Index>(base + t * stride));
            for (std::size_t r = 0; r < d; ++r) {
                Complex acc = 0.0;
                for (std::size_t t = 0; t < d; ++t)
                    acc += op(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(t)) * x[t];
                amps(static_cast<Eigen::Index>(base + r * stride)) = acc;
            }
        }
    }
}

double distinct_tuple_weight(const ComplexVector& amps, std::size_t parties, std::size_t local_dim) {
    check_tensor(amps, parties, local_dim);
    double acc = 0.0;
    for (std::size_t idx = 0; idx < static_cast<std::size_t>(amps.size()); ++idx) {
        if (digits_distinct(idx, parties, local_dim)) acc += std::norm(amps(static_cast<Eigen::Index>(idx)));
    }
    return acc;
}

Eigen::VectorXd local_diagonal(const ComplexMatrix& rho, std::size_t local_dim,
                               std::span<const ComplexMatrix> ops) {
    if (ops.empty()) throw DomainError("local_diagonal: no local operators");
    ComplexMatrix k = ops[0];
    for (std::size_t p = 1; p < ops.size(); ++p) k = kron(k, ops[p]);
    if (rho.rows() != k.rows() || rho.cols() != k.cols() ||
        static_cast<std::size_t>(ops[0].rows()) != local_dim) {
        throw DomainError("local_diagonal: state dimension does not match local_dim^parties");
    }
    Eigen::VectorXd out(k.cols());
    for (Eigen::Index t = 0; t < k.cols(); ++t) {
        Complex acc = 0.0;
        for (Eigen::Index r = 0; r < k.rows(); ++r)
            for (Eigen::Index c = 0; c < k.rows(); ++c) acc += std::conj(k(r, t)) * rho(r, c) * k(c, t);
        out(t) = acc.real();
    }
    return out;
}

}  // namespace serial

// ---------------------------------------------------------------------------
// OpenMP

namespace parallel {

RealMatrix joint_probabilities(const ComplexMatrix& rho, const ComplexMatrix& basis_a,
                               const ComplexMatrix& basis_b) {
    check_joint_inputs(rho, basis_a, basis_b);
    const Eigen::Index da = basis_a.rows();
    const Eigen::Index db = basis_b.rows();
    const Eigen::Index dim = da * db;

    // t1[r, a'*db + j] = sum_b' rho[r, a'*db + b'] B[b', j]
    ComplexMatrix t1(dim, dim);
#pragma omp parallel for schedule(static)
    for (Eigen::Index ap = 0; ap < da; ++ap) {
        for (Eigen::Index j = 0; j < db; ++j) {
            for (Eigen::Index r = 0; r < dim; ++r) {
                Complex acc = 0.0;
                for (Eigen::Index bp = 0; bp < db; ++bp) acc += rho(r, ap * db + bp) * basis_b(bp, j);
                t1(r, ap * db + j) = acc;
            }
        }
    }

    // t2[r, i*db + j] = sum_a' t1[r, a'*db + j] A[a', i]
    ComplexMatrix t2(dim, dim);
#pragma omp parallel for schedule(static)
    for (Eigen::Index i = 0; i < da; ++i) {
        for (Eigen::Index j = 0; j < db; ++j) {
            for (Eigen::Index r = 0; r < dim; ++r) {
                Complex acc = 0.0;
                for (Eigen::Index ap = 0; ap < da; ++ap) acc += t1(r, ap * db + j) * basis_a(ap, i);
                t2(r, i * db + j) = acc;
            }
        }
    }

    RealMatrix p(da, db);
#pragma omp parallel for collapse(2) schedule(static)
    for (Eigen::Index i = 0; i < da; ++i) {
        for (Eigen::Index j = 0; j < db; ++j) {
            Complex acc = 0.0;
            for (Eigen::Index a = 0; a < da; ++a) {
                const Complex ca = std::conj(basis_a(a, i));
                for (Eigen::Index b = 0; b < db; ++b)
                    acc += ca * std::conj(basis_b(b, j)) * t2(a * db + b, i * db + j);
            }
            p(i, j) = acc.real();
        }
    }
    return p;
}

void apply_local(ComplexVector& amps, std::size_t parties, std::size_t local_dim,
                 std::size_t axis, const ComplexMatrix& op) {
    check_tensor(amps, parties, local_dim);
    const std::size_t d = local_dim;
    const std::size_t stride = ipow(d, parties - 1 - axis);
    const std::size_t fibres = ipow(d, parties - 1);
    const auto n_fibres = static_cast<std::int64_t>(fibres);
#pragma omp parallel
    {
        std::vector<Complex> x(d);
#pragma omp for schedule(static)
        for (std::int64_t f = 0; f < n_fibres; ++f) {
            const auto fu = static_cast<std::size_t>(f);
            const std::size_t o = fu / stride;
            const std::size_t in = fu % stride;
            const std::size_t base = o * d * stride + in;
            for (std::size_t t = 0; t < d; ++t) x[t] = amps(static_cast<Eigen::Index>(base + t * stride));
            for (std::size_t r = 0; r < d; ++r) {
                Complex acc = 0.0;
                for (std::size_t t = 0; t < d; ++t)
                    acc += op(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(t)) * x[t];
                amps(static_cast<Eigen::Index>(base + r * stride)) = acc;
            }
        }
    }
}

double distinct_tuple_weight(const ComplexVector& amps, std::size_t parties, std::size_t local_dim) {
    check_tensor(amps, parties, local_dim);
    double acc = 0.0;
    const auto n = static_cast<std::int64_t>(amps.size());
#pragma omp parallel for reduction(+ : acc) schedule(static)
    for (std::int64_t idx = 0; idx < n; ++idx) {
        if (digits_distinct(static_cast<std::size_t>(idx), parties, local_dim)) {
            acc += std::norm(amps(static_cast<Eigen::Index>(idx)));
        }
    }
    return acc;
}

Eigen::VectorXd local_diagonal(const ComplexMatrix& rho, std::size_t local_dim,
                               std::span<const ComplexMatrix> ops) {
    const std::size_t parties = ops.size();
    const std::size_t dim = ipow(local_dim, parties);
    if (parties == 0 || static_cast<std::size_t>(rho.rows()) != dim || rho.rows() != rho.cols()) {
        throw DomainError("local_diagonal: state dimension does not match local_dim^parties");
    }
    std::vector<ComplexMatrix> daggers;
    for (const auto& op : ops) {
        if (static_cast<std::size_t>(op.rows()) != local_dim || op.rows() != op.cols()) {
            throw DomainError("local_diagonal: local operator has the wrong dimension");
        }
        daggers.push_back(op.adjoint());
    }
    const auto n = static_cast<Eigen::Index>(dim);

    // R = K^dagger rho, then S = K^dagger R^dagger = (K^dagger rho K)^dagger.
    auto transform_columns = [&](ComplexMatrix& m) {
#pragma omp parallel for schedule(static)
        for (Eigen::Index c = 0; c < n; ++c) {
            ComplexVector col = m.col(c);
            for (std::size_t axis = 0; axis < parties; ++axis)
                serial::apply_local(col, parties, local_dim, axis, daggers[axis]);
            m.col(c) = col;
        }
    };
    ComplexMatrix r = rho;
    transform_columns(r);
    ComplexMatrix s = r.adjoint();
    transform_columns(s);
    return s.diagonal().real();
}

}  // namespace parallel

}  // namespace mubent::kernels
