#include "mubent/multipartite.hpp"

#include <array>

#include "gtest/gtest.h"

#include "mubent/errors.hpp"
#include "test_util.hpp"

using namespace mubent;
using namespace mubent::testing;

TEST(levi_civita, values) {
    EXPECT_EQ(levi_civita(std::array<std::size_t, 3>{0, 1, 2}), 1);
    EXPECT_EQ(levi_civita(std::array<std::size_t, 3>{1, 0, 2}), -1);
    EXPECT_EQ(levi_civita(std::array<std::size_t, 3>{1, 2, 0}), 1);
    EXPECT_EQ(levi_civita(std::array<std::size_t, 3>{2, 1, 0}), -1);
    EXPECT_EQ(levi_civita(std::array<std::size_t, 3>{0, 0, 2}), 0);
    EXPECT_EQ(levi_civita(std::array<std::size_t, 4>{3, 2, 1, 0}), 1);
    EXPECT_THROW(levi_civita(std::array<std::size_t, 3>{0, 1, 3}), DomainError);
}

TEST(aharonov_state, amplitudes) {
    const auto s2 = aharonov_state(2);
    const double h = 1 / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(s2.pure_state()[1] - h), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s2.pure_state()[2] + h), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s2.pure_state()[0]), 0.0, 1e-15);

    const auto s3 = aharonov_state(3);
    EXPECT_EQ(s3.parties(), 3u);
    EXPECT_EQ(s3.pure_state().dim(), 27u);
    int nonzero = 0;
    for (std::size_t i = 0; i < 27; ++i)
        if (std::abs(s3.pure_state()[i]) > 1e-12) {
            ++nonzero;
            EXPECT_NEAR(std::abs(s3.pure_state()[i]), 1 / std::sqrt(6.0), 1e-15);
        }
    EXPECT_EQ(nonzero, 6);
    EXPECT_NEAR(s3.pure_state()[0 * 9 + 1 * 3 + 2].real(), 1 / std::sqrt(6.0), 1e-15);
    EXPECT_NEAR(s3.pure_state()[1 * 9 + 0 * 3 + 2].real(), -1 / std::sqrt(6.0), 1e-15);

    EXPECT_EQ(aharonov_state(4).pure_state().dim(), 256u);
    EXPECT_THROW(aharonov_state(1), SizeError);
    EXPECT_THROW(aharonov_state(8), SizeError);
}

TEST(aharonov_state, antisymmetric_under_swaps) {
    const auto s = aharonov_state(3);
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b)
            for (std::size_t c = 0; c < 3; ++c)
                EXPECT_NEAR(std::abs(s.pure_state()[a * 9 + b * 3 + c] + s.pure_state()[b * 9 + a * 3 + c]), 0.0, 1e-15);
}

TEST(anticorrelation, aharonov_is_one_in_every_basis) {
    Rng rng(51);
    for (std::size_t n : {2, 3, 4}) {
        const auto s = aharonov_state(n);
        for (int t = 0; t < 3; ++t) {
            const Basis b(random_unitary(n, rng));
            const std::vector<Basis> common(n, b);
            EXPECT_NEAR(anticorrelation(s, common), 1.0, 1e-10);
        }
    }
}

TEST(anticorrelation, examples) {
    const std::size_t n = 3;
    const std::vector<Basis> comp(n, Basis::computational(n));
    // |000>: never distinct
    const auto zero = MultipartiteState::pure(n, n, PureState::basis_state(27, 0));
    EXPECT_NEAR(anticorrelation(zero, comp), 0.0, 1e-15);
    // |012>: always distinct
    const auto distinct = MultipartiteState::pure(n, n, PureState::basis_state(27, 5));
    EXPECT_NEAR(anticorrelation(distinct, comp), 1.0, 1e-15);
    // white noise: n!/n^n
    const auto noise = MultipartiteState::mixed(n, n, DensityMatrix::maximally_mixed(27));
    EXPECT_NEAR(anticorrelation(noise, comp), 6.0 / 27.0, 1e-14);
    // local dimension below n: impossible
    const auto qubits = MultipartiteState::pure(3, 2, PureState::basis_state(8, 1));
    EXPECT_EQ(anticorrelation(qubits, std::vector<Basis>(3, Basis::computational(2))), 0.0);

    EXPECT_THROW(anticorrelation(zero, std::vector<Basis>(2, Basis::computational(3))), DomainError);
    EXPECT_THROW(anticorrelation(zero, std::vector<Basis>(3, Basis::computational(2))), DomainError);
}

TEST(anticorrelation, pure_and_mixed_agree) {
    Rng rng(52);
    const PureState psi = random_pure_state(27, rng);
    const auto pure = MultipartiteState::pure(3, 3, psi);
    const auto mixed = MultipartiteState::mixed(3, 3, psi.projector());
    const std::vector<Basis> bases{Basis(random_unitary(3, rng)), Basis(random_unitary(3, rng)),
                                   Basis(random_unitary(3, rng))};
    EXPECT_NEAR(anticorrelation(pure, bases), anticorrelation(mixed, bases), 1e-12);
}

TEST(multipartite_state, validation) {
    EXPECT_THROW(MultipartiteState::pure(3, 3, PureState::basis_state(8, 0)), DomainError);
    EXPECT_THROW(MultipartiteState::mixed(3, 3, DensityMatrix::maximally_mixed(8)), DomainError);
    EXPECT_THROW(MultipartiteState::mixed(5, 5, DensityMatrix::maximally_mixed(2)), SizeError);
}

TEST(j_m, aharonov_values) {
    for (std::size_t n : {2, 3, 4}) {
        const MubSet mub = construct_mub_set(n);
        for (std::size_t m = 1; m <= n + 1; ++m) {
            const auto r = j_m(aharonov_state(n), mub.prefix(m));
            EXPECT_NEAR(r.aggregate, double(m), 1e-10);
            EXPECT_DOUBLE_EQ(r.bound, separable_bound(m, n));
            EXPECT_EQ(r.violated, m >= 2);
        }
    }
    EXPECT_THROW(j_m(aharonov_state(3), construct_mub_set(2)), DomainError);
}

TEST(thresholds, closed_form_values) {
    EXPECT_NEAR(aharonov_noise_threshold(3, 4), 5.0 / 14.0, 1e-15);
    EXPECT_NEAR(aharonov_noise_threshold(3, 2), 4.0 / 7.0, 1e-15);
    EXPECT_NEAR(aharonov_noise_threshold(3, 3), 3.0 / 7.0, 1e-15);
    EXPECT_THROW(aharonov_noise_threshold(3, 5), DomainError);
    EXPECT_THROW(aharonov_noise_threshold(1, 2), DomainError);
    EXPECT_THROW(aharonov_noise_threshold(13, 2), DomainError);
}

TEST(thresholds, decrease_with_m) {
    for (std::size_t n = 2; n <= 12; ++n)
        for (std::size_t m = 2; m <= n; ++m)
            EXPECT_LT(aharonov_noise_threshold(n, m + 1), aharonov_noise_threshold(n, m));
}

TEST(thresholds, bisection_matches_closed_form) {
    for (std::size_t n : {2, 3, 4, 5}) {
        const MubSet mub = construct_mub_set(n);
        for (std::size_t m = 2; m <= n + 1; ++m)
            EXPECT_NEAR(aharonov_threshold_bisection(n, mub.prefix(m)), aharonov_noise_threshold(n, m), 1e-8);
    }
    EXPECT_THROW(aharonov_threshold_bisection(3, construct_mub_set(3).prefix(1)), DomainError);
}

TEST(white_noise, matches_direct_mixture) {
    const std::size_t n = 3;
    const MubSet mub = construct_mub_set(n);
    const DensityMatrix s = aharonov_state(n).pure_state().projector();
    for (double alpha : {0.0, 0.2, 5.0 / 14.0, 0.7, 1.0}) {
        const DensityMatrix rho = DensityMatrix::mixture(alpha, s, DensityMatrix::maximally_mixed(27));
        const auto direct = j_m(MultipartiteState::mixed(n, n, rho), mub);
        const auto lin = aharonov_white_noise_jm(n, alpha, mub);
        EXPECT_NEAR(direct.aggregate, lin.aggregate, 1e-12);
    }
    EXPECT_THROW(aharonov_white_noise_jm(3, 1.2, mub), DomainError);
}

TEST(j_m, local_unitary_invariance) {
    Rng rng(53);
    const MubSet mub = construct_mub_set(3);
    const ComplexMatrix u = random_unitary(3, rng);
    ComplexVector v = aharonov_state(3).pure_state().amplitudes();
    const ComplexMatrix uuu = kron(kron(u, u), u);
    const auto rotated = MultipartiteState::pure(3, 3, PureState::normalized(uuu * v));
    EXPECT_NEAR(j_m(rotated, mub).aggregate, 4.0, 1e-10);
}

TEST(j_m, biseparable_states_never_violate) {
    Rng rng(54);
    const MubSet mub = construct_mub_set(3);
    for (int t = 0; t < 60; ++t) {
        // one qutrit split off from an arbitrary two-qutrit state, at a random cut
        const PureState single = random_pure_state(3, rng);
        const PureState pair = random_pure_state(9, rng);
        const int cut = t % 3;
        ComplexVector v(27);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                for (int c = 0; c < 3; ++c) {
                    const int digits[3] = {a, b, c};
                    const int lone = digits[cut];
                    const int r1 = digits[(cut + 1) % 3], r2 = digits[(cut + 2) % 3];
                    v(a * 9 + b * 3 + c) = single[std::size_t(lone)] * pair[std::size_t(r1 * 3 + r2)];
                }
        const auto state = MultipartiteState::pure(3, 3, PureState::normalized(v));
        for (std::size_t m = 1; m <= 4; ++m) EXPECT_FALSE(j_m(state, mub.prefix(m)).violated) << t << " " << m;
    }
}
