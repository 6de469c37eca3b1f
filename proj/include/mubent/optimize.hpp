#pragma once

// Lower-bound search for max I_m over local unitaries U_A (x) U_B (and,
// optionally, per-basis outcome relabelings). Any violation it reports is
// genuine; failing to find one certifies nothing.

#include <cstdint>
#include <vector>

#include "mubent/criteria.hpp"
#include "mubent/mubs.hpp"
#include "mubent/qmath.hpp"

namespace mubent {

/// U = D * prod_{i<j} G_ij(theta, phi), pairs in lexicographic order, with
///   G_ij = [[cos t, -e^{-i phi} sin t], [e^{i phi} sin t, cos t]] on rows i, j
/// and D = diag(1, e^{i delta_1}, ..., e^{i delta_{d-1}}).
/// Angles are nominally in [0, pi/2] and phases in [0, 2 pi), but any real
/// value is accepted.
struct UnitaryParams {
    std::size_t dim = 0;
    std::vector<double> angles;           // d(d-1)/2
    std::vector<double> phases;           // d(d-1)/2
    std::vector<double> diagonal_phases;  // d-1

    static UnitaryParams zero(std::size_t d);
    static UnitaryParams random(std::size_t d, Rng& rng);
    /// d^2 - 1
    static std::size_t count(std::size_t d) { return d * d - 1; }

    /// angles, phases, diagonal phases, concatenated.
    std::vector<double> flatten() const;
    static UnitaryParams unflatten(std::size_t d, const std::vector<double>& x);
};

/// Throws DomainError when the parameter counts do not match dim.
ComplexMatrix parameterize_unitary(const UnitaryParams& params);

/// I_m of (U_A (x) U_B) rho (U_A (x) U_B)^dagger, `mub` on A and its conjugate
/// on B, summed with or without per-basis optimal relabeling.
double objective(const DensityMatrix& rho, const MubSet& mub, const UnitaryParams& params_a,
                 const UnitaryParams& params_b, bool relabel);

/// Full report for the same rotated state.
CriterionReport objective_report(const DensityMatrix& rho, const MubSet& mub, const UnitaryParams& params_a,
                                 const UnitaryParams& params_b, bool relabel);

struct OptimizerConfig {
    std::size_t restarts = 8;
    std::size_t max_sweeps = 200;
    double convergence = 1e-8;  // stop when a sweep improves by less
    std::uint64_t seed = 0;
    bool relabel = true;
};

struct OptimizeResult {
    double best_value = 0.0;
    UnitaryParams params_a;
    UnitaryParams params_b;
    /// Whether the winning restart met the convergence test before max_sweeps.
    bool converged = false;
    std::size_t sweeps = 0;
    /// Final value of every restart, in restart order.
    std::vector<double> restart_values;
    CriterionReport report;
};

/// Cyclic coordinate ascent with a bracketed line search per coordinate.
/// Restart 0 starts from the identity, the others from seeded random
/// parameters; restarts run in parallel. Throws DomainError on a dimension
/// mismatch or an invalid config.
OptimizeResult maximize_im(const DensityMatrix& rho, const MubSet& mub, const OptimizerConfig& config = {});

}  // namespace mubent
