#pragma once

// Hot inner loops. Every kernel exists twice with the same signature:
//   serial::   straightforward loops, kept as the reference for tests
//   parallel:: OpenMP version used by the library
// The two must agree to rounding (see tests/unit/test_kernels.cpp and
// bench/bench_kernels.cpp).

#include <cstddef>
#include <span>

#include "mubent/qmath.hpp"

namespace mubent::kernels {

namespace serial {

/// P(i,j) = <a_i b_j| rho |a_i b_j>, where a_i / b_j are the columns of
/// `basis_a` / `basis_b` and rho acts on C^dA (x) C^dB. Direct O(d^6) loops.
RealMatrix joint_probabilities(const ComplexMatrix& rho, const ComplexMatrix& basis_a,
                               const ComplexMatrix& basis_b);

/// Multiplies tensor axis `axis` of an n-party, local-dimension-d amplitude
/// vector (party 0 most significant) by `op` in place.
void apply_local(ComplexVector& amps, std::size_t parties, std::size_t local_dim,
                 std::size_t axis, const ComplexMatrix& op);

/// Sum of |amp|^2 over index tuples whose digits are pairwise distinct.
double distinct_tuple_weight(const ComplexVector& amps, std::size_t parties,
                             std::size_t local_dim);

/// Diagonal of K^dagger rho K for K = ops[0] (x) ... (x) ops[n-1]; real
/// because rho is Hermitian.
Eigen::VectorXd local_diagonal(const ComplexMatrix& rho, std::size_t local_dim,
                               std::span<const ComplexMatrix> ops);

}  // namespace serial

namespace parallel {

/// Same contract as serial::joint_probabilities; O(d^5) staged contraction.
RealMatrix joint_probabilities(const ComplexMatrix& rho, const ComplexMatrix& basis_a,
                               const ComplexMatrix& basis_b);

void apply_local(ComplexVector& amps, std::size_t parties, std::size_t local_dim,
                 std::size_t axis, const ComplexMatrix& op);

double distinct_tuple_weight(const ComplexVector& amps, std::size_t parties,
                             std::size_t local_dim);

Eigen::VectorXd local_diagonal(const ComplexMatrix& rho, std::size_t local_dim,
                               std::span<const ComplexMatrix> ops);

}  // namespace parallel

/// True iff the base-`local_dim` digits of `index` (n of them) are distinct.
bool digits_distinct(std::size_t index, std::size_t parties, std::size_t local_dim);

}  // namespace mubent::kernels
