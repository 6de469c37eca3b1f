#pragma once

// Small independent oracles shared by the unit tests. Everything here is
// written from the definitions with plain loops and no library shortcuts.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "mubent/qmath.hpp"

namespace mubent::testing {

inline double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

inline ComplexMatrix pauli_x() {
    ComplexMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

inline ComplexMatrix pauli_z() {
    ComplexMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

inline ComplexMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    std::normal_distribution<double> g;
    ComplexMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = {g(rng), g(rng)};
    return m;
}

/// Random full-rank density matrix G G^dagger / tr.
inline DensityMatrix random_density(std::size_t dim, Rng& rng) {
    const auto n = static_cast<Eigen::Index>(dim);
    const ComplexMatrix g = random_matrix(n, n, rng);
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return DensityMatrix(rho);
}

/// |phi+_d> = (1/sqrt d) sum_i |i>|i>.
inline PureState phi_plus(std::size_t d) {
    ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(d * d));
    for (std::size_t i = 0; i < d; ++i) v(static_cast<Eigen::Index>(i * d + i)) = 1.0 / std::sqrt(double(d));
    return PureState(v);
}

/// max over all permutations s of sum_i w(i, s(i)), by enumeration.
inline double brute_force_assignment(const RealMatrix& w) {
    std::vector<int> perm(static_cast<std::size_t>(w.rows()));
    std::iota(perm.begin(), perm.end(), 0);
    double best = -1e300;
    do {
        double s = 0.0;
        for (std::size_t i = 0; i < perm.size(); ++i) s += w(static_cast<Eigen::Index>(i), perm[i]);
        best = std::max(best, s);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

/// Product state of two random pure states, as a density matrix.
inline DensityMatrix random_product(std::size_t d, Rng& rng) {
    return tensor(random_pure_state(d, rng), random_pure_state(d, rng)).projector();
}

}  // namespace mubent::testing
