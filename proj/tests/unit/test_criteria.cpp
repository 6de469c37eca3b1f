#include "mubent/criteria.hpp"

#include <numbers>

#include "gtest/gtest.h"

#include "mubent/errors.hpp"
#include "test_util.hpp"

using namespace mubent;
using namespace mubent::testing;

namespace {

DensityMatrix shifted_phi_plus(std::size_t d, std::size_t shift) {
    ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(d * d));
    for (std::size_t i = 0; i < d; ++i) v(static_cast<Eigen::Index>(i * d + (i + shift) % d)) = 1.0 / std::sqrt(double(d));
    return PureState(v).projector();
}

}  // namespace

TEST(separable_bound, values) {
    EXPECT_DOUBLE_EQ(separable_bound(2, 2), 1.5);
    EXPECT_DOUBLE_EQ(separable_bound(4, 3), 2.0);
    EXPECT_DOUBLE_EQ(separable_bound(1, 7), 1.0);
}

TEST(make_report, margin_and_threshold) {
    const auto r = make_report({0.75, 0.75 + 2e-9}, 1.5);
    EXPECT_NEAR(r.margin, 2e-9, 1e-15);
    EXPECT_TRUE(r.violated);
    EXPECT_FALSE(make_report({0.75, 0.75}, 1.5).violated);
    EXPECT_FALSE(make_report({0.75, 0.75 + 5e-10}, 1.5).violated);
}

TEST(mutual_predictability, phi_plus_and_product) {
    for (std::size_t d : {2, 3, 5}) {
        const DensityMatrix phi = phi_plus(d).projector();
        const MubSet pair = fourier_pair(d);
        EXPECT_NEAR(mutual_predictability(phi, pair[0], pair[0]), 1.0, 1e-12);
        EXPECT_NEAR(mutual_predictability(phi, pair[1], pair[1].conjugate()), 1.0, 1e-12);
        // |0>|0>: certain in the computational basis, uniform in Fourier
        const DensityMatrix zero = tensor(PureState::basis_state(d, 0), PureState::basis_state(d, 0)).projector();
        EXPECT_NEAR(mutual_predictability(zero, pair[0], pair[0]), 1.0, 1e-12);
        EXPECT_NEAR(mutual_predictability(zero, pair[1], pair[1].conjugate()), 1.0 / double(d), 1e-12);
    }
}

TEST(mutual_predictability, dimension_mismatch) {
    const DensityMatrix rho = DensityMatrix::maximally_mixed(6);
    EXPECT_THROW(mutual_predictability(rho, Basis::computational(2), Basis::computational(3)), DomainError);
    EXPECT_THROW(mutual_predictability(rho, Basis::computational(2), Basis::computational(2)), DomainError);
}

TEST(i_m, maximally_mixed_gives_m_over_d) {
    for (std::size_t d : {2, 3, 4, 5}) {
        const MubSet mub = construct_mub_set(d);
        for (std::size_t m = 1; m <= d + 1; ++m) {
            const auto r = i_m(DensityMatrix::maximally_mixed(d * d), mub.prefix(m));
            EXPECT_NEAR(r.aggregate, double(m) / double(d), 1e-12);
            EXPECT_FALSE(r.violated);
            EXPECT_DOUBLE_EQ(r.bound, separable_bound(m, d));
            EXPECT_TRUE(r.labelings.empty());
        }
    }
}

TEST(i_m, phi_plus_reaches_m) {
    for (std::size_t d : {2, 3, 4, 5, 7}) {
        const MubSet mub = construct_mub_set(d);
        const auto r = i_m(phi_plus(d).projector(), mub);
        EXPECT_NEAR(r.aggregate, double(d + 1), 1e-10);
        EXPECT_TRUE(r.violated);
        for (double v : r.values) EXPECT_NEAR(v, 1.0, 1e-10);
    }
}

TEST(i_m, cyclic_shift_needs_relabeling) {
    const std::size_t d = 3;
    const DensityMatrix rho = shifted_phi_plus(d, 1);
    const MubSet comp({Basis::computational(d)});
    EXPECT_NEAR(i_m(rho, comp, comp).aggregate, 0.0, 1e-14);
    const auto r = i_m(rho, comp, comp, ImOptions{.relabel = true});
    EXPECT_NEAR(r.aggregate, 1.0, 1e-14);
    ASSERT_EQ(r.labelings.size(), 1u);
    EXPECT_EQ(r.labelings[0], (std::vector<int>{1, 2, 0}));
}

TEST(i_m, relabeling_never_lowers) {
    Rng rng(41);
    const MubSet mub = construct_mub_set(3);
    for (int t = 0; t < 20; ++t) {
        const DensityMatrix rho = random_density(9, rng);
        const auto plain = i_m(rho, mub);
        const auto best = i_m(rho, mub, ImOptions{.relabel = true});
        for (std::size_t k = 0; k < plain.values.size(); ++k) EXPECT_GE(best.values[k], plain.values[k] - 1e-14);
    }
}

TEST(i_m, mismatched_sets) {
    const MubSet a = construct_mub_set(3);
    EXPECT_THROW(i_m(DensityMatrix::maximally_mixed(9), a, a.prefix(2)), DomainError);
    EXPECT_THROW(i_m(DensityMatrix::maximally_mixed(4), a), DomainError);
    EXPECT_THROW(i_m(DensityMatrix::maximally_mixed(9), a, construct_mub_set(2)), DomainError);
}

TEST(i_m, linear_in_the_state) {
    Rng rng(42);
    const MubSet mub = construct_mub_set(3);
    for (int t = 0; t < 10; ++t) {
        const DensityMatrix a = random_density(9, rng);
        const DensityMatrix b = random_density(9, rng);
        const double p = std::uniform_real_distribution<double>(0, 1)(rng);
        const double mixed = i_m(DensityMatrix::mixture(p, a, b), mub).aggregate;
        EXPECT_NEAR(mixed, p * i_m(a, mub).aggregate + (1 - p) * i_m(b, mub).aggregate, 1e-12);
    }
}

TEST(i_m, product_states_never_violate) {
    Rng rng(43);
    for (std::size_t d : {2, 3, 4, 5}) {
        const MubSet mub = construct_mub_set(d);
        for (int t = 0; t < 50; ++t) {
            const DensityMatrix rho = random_product(d, rng);
            for (std::size_t m = 1; m <= d + 1; ++m) {
                EXPECT_FALSE(i_m(rho, mub.prefix(m)).violated);
                EXPECT_FALSE(i_m(rho, mub.prefix(m), ImOptions{.relabel = true}).violated);
            }
        }
    }
}

TEST(isotropic, spectrum) {
    for (std::size_t d : {2, 3, 4}) {
        for (double alpha : {isotropic_alpha_min(d), 0.0, 0.3, 1.0}) {
            const DensityMatrix rho = isotropic_state(d, alpha);
            Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho.matrix());
            const Eigen::VectorXd ev = es.eigenvalues();
            const double low = (1 - alpha) / double(d * d);
            const double top = alpha + low;
            int low_count = 0, top_count = 0;
            for (Eigen::Index i = 0; i < ev.size(); ++i) {
                if (std::abs(ev(i) - low) < 1e-12) ++low_count;
                if (std::abs(ev(i) - top) < 1e-12) ++top_count;
            }
            if (alpha == 0.0) {
                EXPECT_EQ(low_count, int(d * d));
            } else {
                EXPECT_EQ(low_count, int(d * d - 1));
                EXPECT_EQ(top_count, 1);
            }
        }
    }
}

TEST(isotropic, range_checks) {
    EXPECT_DOUBLE_EQ(isotropic_alpha_min(3), -1.0 / 8.0);
    EXPECT_THROW(isotropic_state(3, 1.01), DomainError);
    EXPECT_THROW(isotropic_state(3, -0.2), DomainError);
    EXPECT_THROW(isotropic_state(0, 0.5), DomainError);
    EXPECT_NO_THROW(isotropic_state(3, -1.0 / 8.0));
}

TEST(isotropic, i_m_closed_form) {
    for (std::size_t d : {2, 3, 5}) {
        const MubSet mub = construct_mub_set(d);
        for (std::size_t m = 1; m <= d + 1; ++m) {
            for (double alpha : {isotropic_alpha_min(d), 0.0, 0.2, 0.5, 0.9, 1.0}) {
                const double expected = double(m) * (alpha + (1 - alpha) / double(d));
                EXPECT_NEAR(i_m(isotropic_state(d, alpha), mub.prefix(m)).aggregate, expected, 1e-12);
            }
        }
    }
}

TEST(isotropic, threshold_is_one_over_m) {
    for (std::size_t d : {2, 3, 4, 5}) {
        const MubSet mub = construct_mub_set(d);
        for (std::size_t m = 2; m <= d + 1; ++m) {
            EXPECT_NEAR(isotropic_threshold(d, m, mub.prefix(m)), 1.0 / double(m), 1e-8) << d << " " << m;
        }
    }
    EXPECT_THROW(isotropic_threshold(3, 1, construct_mub_set(3).prefix(1)), DomainError);
    EXPECT_THROW(isotropic_threshold(3, 3, construct_mub_set(3)), DomainError);
}

TEST(schmidt_i2, examples) {
    EXPECT_NEAR(schmidt_i2({1.0}, 3), 1.0 + 1.0 / 3.0, 1e-15);
    const double h = 1 / std::numbers::sqrt2;
    EXPECT_NEAR(schmidt_i2({h, h}, 2), 2.0, 1e-15);
    const double t = 1 / std::sqrt(3.0);
    EXPECT_NEAR(schmidt_i2({t, t, t}, 3), 2.0, 1e-15);
    EXPECT_THROW(schmidt_i2({0.6, 0.6}, 2), DomainError);
    EXPECT_THROW(schmidt_i2({-0.6, 0.8}, 2), DomainError);
    EXPECT_THROW(schmidt_i2({0.6, 0.8}, 1), DomainError);
    EXPECT_THROW(schmidt_i2({}, 2), DomainError);
}

TEST(schmidt_i2, closed_form_matches_direct) {
    Rng rng(44);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::size_t d : {2, 3, 4, 6}) {
        for (int t = 0; t < 20; ++t) {
            const std::size_t r = 1 + rng() % d;
            std::vector<double> l(r);
            double n2 = 0;
            for (auto& x : l) { x = u(rng); n2 += x * x; }
            for (auto& x : l) x /= std::sqrt(n2);
            EXPECT_NEAR(schmidt_i2(l, d), schmidt_i2_direct(l, d), 1e-12);
            // entangled iff more than one nonzero coefficient
            EXPECT_EQ(schmidt_i2(l, d) > separable_bound(2, d) + 1e-9, r > 1);
        }
    }
}

TEST(pure_state_i2, matches_schmidt_coefficients) {
    Rng rng(45);
    for (std::size_t d : {2, 3, 4}) {
        for (int t = 0; t < 10; ++t) {
            const PureState psi = random_pure_state(d * d, rng);
            const auto s = schmidt_decompose(psi, d, d);
            const auto rep = pure_state_i2(psi, d);
            EXPECT_NEAR(rep.values[0], 1.0, 1e-10);
            EXPECT_NEAR(rep.aggregate, schmidt_i2(s.coefficients, d), 1e-10);
            EXPECT_TRUE(rep.violated);
        }
        const PureState prod = tensor(random_pure_state(d, rng), random_pure_state(d, rng));
        EXPECT_FALSE(pure_state_i2(prod, d).violated);
    }
}

TEST(weyl, qubit_paulis) {
    EXPECT_LT(max_abs(weyl_operator(2, 1, 0) - pauli_z()), 1e-15);
    EXPECT_LT(max_abs(weyl_operator(2, 0, 1) - pauli_x()), 1e-15);
    EXPECT_LT(max_abs(weyl_operator(3, 0, 0) - ComplexMatrix::Identity(3, 3)), 1e-15);
    EXPECT_THROW(weyl_operator(3, 3, 0), DomainError);
}

TEST(weyl, unitary_and_commutation) {
    for (std::size_t d : {3, 4, 5}) {
        const Complex w = std::polar(1.0, 2 * std::numbers::pi / double(d));
        const ComplexMatrix z = weyl_operator(d, 1, 0);
        const ComplexMatrix x = weyl_operator(d, 0, 1);
        EXPECT_LT(unitarity_defect(x * z), 1e-12);
        // X Z = w Z X with X|s+1> = |s>
        EXPECT_LT(max_abs(x * z - w * z * x), 1e-12);
    }
}

TEST(bell_states, orthonormal_basis) {
    for (std::size_t d : {2, 3, 4}) {
        const auto n = static_cast<Eigen::Index>(d * d);
        ComplexMatrix all(n, n);
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t l = 0; l < d; ++l) all.col(static_cast<Eigen::Index>(k * d + l)) = bell_state(d, k, l).amplitudes();
        EXPECT_LT(max_abs(all.adjoint() * all - ComplexMatrix::Identity(n, n)), 1e-12);
        EXPECT_NEAR(overlap_modulus(bell_state(d, 0, 0), phi_plus(d)), 1.0, 1e-12);
    }
}

TEST(bell_diagonal, coefficient_validation_and_state) {
    EXPECT_THROW(BellDiagonalCoeffs(RealMatrix::Constant(2, 2, 0.3)), DomainError);
    RealMatrix neg = RealMatrix::Constant(2, 2, 0.25);
    neg(0, 0) = 0.5; neg(0, 1) = 0.0; neg(1, 1) = 0.5; neg(1, 0) = 0.0;
    EXPECT_NO_THROW(BellDiagonalCoeffs{neg});
    neg(1, 0) = -0.1; neg(1, 1) = 0.6;
    EXPECT_THROW(BellDiagonalCoeffs{neg}, DomainError);
    EXPECT_THROW(BellDiagonalCoeffs(RealMatrix::Constant(2, 3, 1.0 / 6)), DomainError);

    RealMatrix c = RealMatrix::Zero(3, 3);
    c(0, 0) = 1.0;
    const DensityMatrix rho = bell_diagonal_state(BellDiagonalCoeffs(c));
    EXPECT_LT(max_abs(rho.matrix() - phi_plus(3).projector().matrix()), 1e-12);

    const DensityMatrix flat = bell_diagonal_state(BellDiagonalCoeffs(RealMatrix::Constant(3, 3, 1.0 / 9)));
    EXPECT_LT(max_abs(flat.matrix() - DensityMatrix::maximally_mixed(9).matrix()), 1e-12);
}

TEST(enclosure, aligned_equals_closed_form) {
    Rng rng(46);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::size_t d : {2, 3, 5}) {
        const MubSet mub = construct_mub_set(d);
        for (int t = 0; t < 15; ++t) {
            RealMatrix c(d, d);
            for (Eigen::Index i = 0; i < c.size(); ++i) c.data()[i] = u(rng);
            c /= c.sum();
            const BellDiagonalCoeffs coeffs(c);
            const auto rep = enclosure_check(coeffs, mub);
            EXPECT_NEAR(rep.aligned.aggregate, 1.0 + c.maxCoeff() * double(d), 1e-10);
            EXPECT_NEAR(rep.closed_form, 1.0 + c.maxCoeff() * double(d), 1e-15);
            EXPECT_GE(rep.optimal.aggregate, rep.aligned.aggregate - 1e-12);
            EXPECT_EQ(rep.aligned.labelings.size(), d + 1);
            // violation iff h > 1/d
            EXPECT_EQ(rep.aligned.violated, c.maxCoeff() * double(d) > 1.0 + 1e-9);
        }
    }
}

TEST(enclosure, dominant_off_identity) {
    RealMatrix c = RealMatrix::Constant(3, 3, 0.05);
    c(1, 2) = 0.6;
    const auto rep = enclosure_check(BellDiagonalCoeffs(c), construct_mub_set(3));
    EXPECT_NEAR(rep.aligned.aggregate, 1.0 + 0.6 * 3, 1e-10);
    EXPECT_TRUE(rep.aligned.violated);
}

TEST(enclosure, rejects_bad_sets) {
    const BellDiagonalCoeffs c(RealMatrix::Constant(3, 3, 1.0 / 9));
    EXPECT_THROW(enclosure_check(c, construct_mub_set(3).prefix(3)), DomainError);
    EXPECT_THROW(enclosure_check(c, construct_mub_set(2)), DomainError);
}
