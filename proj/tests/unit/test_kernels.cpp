#include "mubent/kernels.hpp"

#include "gtest/gtest.h"

#include "mubent/errors.hpp"
#include "test_util.hpp"

using namespace mubent;
using namespace mubent::testing;

TEST(kernels, joint_probabilities_serial_vs_parallel) {
    Rng rng(31);
    for (std::size_t d : {2, 3, 4, 5}) {
        const DensityMatrix rho = random_density(d * d, rng);
        const ComplexMatrix a = random_unitary(d, rng);
        const ComplexMatrix b = random_unitary(d, rng);
        const RealMatrix s = kernels::serial::joint_probabilities(rho.matrix(), a, b);
        const RealMatrix p = kernels::parallel::joint_probabilities(rho.matrix(), a, b);
        EXPECT_LT((s - p).cwiseAbs().maxCoeff(), 1e-13) << d;
        EXPECT_NEAR(s.sum(), 1.0, 1e-12);
        EXPECT_GE(s.minCoeff(), -1e-14);
    }
}

TEST(kernels, joint_probabilities_rectangular_parties) {
    Rng rng(32);
    const DensityMatrix rho = random_density(6, rng);
    const ComplexMatrix a = random_unitary(2, rng);
    const ComplexMatrix b = random_unitary(3, rng);
    const RealMatrix s = kernels::serial::joint_probabilities(rho.matrix(), a, b);
    EXPECT_EQ(s.rows(), 2);
    EXPECT_EQ(s.cols(), 3);
    EXPECT_LT((s - kernels::parallel::joint_probabilities(rho.matrix(), a, b)).cwiseAbs().maxCoeff(), 1e-13);
    EXPECT_THROW(kernels::parallel::joint_probabilities(rho.matrix(), a, a), DomainError);
}

TEST(kernels, apply_local_matches_kron) {
    Rng rng(33);
    const std::size_t n = 3, d = 3;
    const ComplexMatrix op = random_matrix(3, 3, rng);
    const ComplexVector v = random_pure_state(27, rng).amplitudes();
    const ComplexMatrix id = ComplexMatrix::Identity(3, 3);
    for (std::size_t axis = 0; axis < n; ++axis) {
        ComplexMatrix full = axis == 0 ? op : id;
        for (std::size_t p = 1; p < n; ++p) full = kron(full, p == axis ? op : id);
        const ComplexVector expected = full * v;
        ComplexVector s = v, p = v;
        kernels::serial::apply_local(s, n, d, axis, op);
        kernels::parallel::apply_local(p, n, d, axis, op);
        EXPECT_LT((s - expected).norm(), 1e-12);
        EXPECT_LT((p - expected).norm(), 1e-12);
    }
    ComplexVector bad(5);
    EXPECT_THROW(kernels::serial::apply_local(bad, n, d, 0, op), DomainError);
}

TEST(kernels, distinct_tuple_weight_and_digits) {
    EXPECT_TRUE(kernels::digits_distinct(0 * 9 + 1 * 3 + 2, 3, 3));
    EXPECT_FALSE(kernels::digits_distinct(0, 3, 3));
    EXPECT_FALSE(kernels::digits_distinct(1 * 9 + 2 * 3 + 1, 3, 3));
    Rng rng(34);
    const ComplexVector v = random_pure_state(64, rng).amplitudes();
    const double s = kernels::serial::distinct_tuple_weight(v, 3, 4);
    const double p = kernels::parallel::distinct_tuple_weight(v, 3, 4);
    EXPECT_NEAR(s, p, 1e-14);
    double oracle = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                if (a != b && b != c && a != c) oracle += std::norm(v(a * 16 + b * 4 + c));
    EXPECT_NEAR(s, oracle, 1e-14);
}

TEST(kernels, local_diagonal_serial_vs_parallel) {
    Rng rng(35);
    const DensityMatrix rho = random_density(27, rng);
    const std::vector<ComplexMatrix> ops{random_unitary(3, rng), random_unitary(3, rng), random_unitary(3, rng)};
    const Eigen::VectorXd s = kernels::serial::local_diagonal(rho.matrix(), 3, ops);
    const Eigen::VectorXd p = kernels::parallel::local_diagonal(rho.matrix(), 3, ops);
    EXPECT_LT((s - p).cwiseAbs().maxCoeff(), 1e-13);
    EXPECT_NEAR(s.sum(), 1.0, 1e-12);
    const std::vector<ComplexMatrix> wrong{random_unitary(2, rng), random_unitary(2, rng)};
    EXPECT_THROW(kernels::parallel::local_diagonal(rho.matrix(), 2, wrong), DomainError);
}
