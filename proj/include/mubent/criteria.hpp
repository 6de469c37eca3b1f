#pragma once

// Bipartite correlation criteria built on mutual predictabilities
//   C_{a,b} = sum_i <i_a i_b| rho |i_a i_b>,   I_m = sum_k C_{k,k},
// with the separable bound I_m <= 1 + (m-1)/d.

#include <cstddef>
#include <vector>

#include "mubent/mubs.hpp"
#include "mubent/qmath.hpp"

namespace mubent {

/// Margin above the bound that counts as a violation.
inline constexpr double kViolationMargin = 1e-9;

struct CriterionReport {
    std::vector<double> values;  // one per measured basis pair
    double aggregate = 0.0;      // sum of values
    double bound = 0.0;
    double margin = 0.0;         // aggregate - bound
    bool violated = false;       // margin > threshold
    /// B-side outcome paired with each A-side outcome, per basis; empty when the
    /// fixed labeling i <-> i was used.
    std::vector<std::vector<int>> labelings;
};

CriterionReport make_report(std::vector<double> values, double bound,
                            double threshold = kViolationMargin);

/// 1 + (m-1)/d
double separable_bound(std::size_t m, std::size_t d);

/// d x d matrix P(i,j) of joint outcome probabilities.
RealMatrix joint_probabilities(const DensityMatrix& rho, const Basis& a, const Basis& b);

/// Throws DomainError unless rho.dim() = a.dim() * b.dim() and a.dim() = b.dim().
double mutual_predictability(const DensityMatrix& rho, const Basis& a, const Basis& b);

struct Relabeling {
    double value = 0.0;
    std::vector<int> permutation;  // A outcome i is paired with B outcome permutation[i]
};

/// max over permutations s of sum_i P(i, s(i)), solved as a linear assignment.
Relabeling optimal_relabeling(const DensityMatrix& rho, const Basis& a, const Basis& b);

struct ImOptions {
    bool relabel = false;
};

/// I_m with basis k of `mub_a` on A paired with basis k of `mub_b` on B.
CriterionReport i_m(const DensityMatrix& rho, const MubSet& mub_a, const MubSet& mub_b,
                    ImOptions opts = {});

/// I_m with `mub` on A and its complex conjugate on B.
CriterionReport i_m(const DensityMatrix& rho, const MubSet& mub, ImOptions opts = {});

// --- isotropic family ------------------------------------------------------

/// Smallest alpha for which the isotropic state is positive: -1/(d^2-1).
double isotropic_alpha_min(std::size_t d);

/// alpha |phi+><phi+| + (1-alpha)/d^2 * 1. Throws DomainError outside the valid range.
DensityMatrix isotropic_state(std::size_t d, double alpha);

/// Bisection (to 1e-9) for the smallest alpha at which i_m on the isotropic
/// state, with `mub_a` on A and its conjugate on B, reports a violation.
/// `mub_a` must hold m >= 2 bases in dimension d.
double isotropic_threshold(std::size_t d, std::size_t m, const MubSet& mub_a);

// --- pure states and two bases ---------------------------------------------

/// 1 + (1/d)(1 + sum_{m != n} lambda_m lambda_n). Throws DomainError if the
/// coefficients are negative, unnormalized, or more than d.
double schmidt_i2(const std::vector<double>& lambdas, std::size_t d);

/// Same quantity evaluated from joint probabilities of sum_i lambda_i |i>|i>
/// in the computational basis and the Fourier basis / its conjugate.
double schmidt_i2_direct(const std::vector<double>& lambdas, std::size_t d);

/// Two-basis criterion for a bipartite pure state on C^d (x) C^d, measured in
/// its Schmidt bases and their Fourier-rotated partners.
CriterionReport pure_state_i2(const PureState& psi, std::size_t d);

// --- Weyl operators and Bell-diagonal states --------------------------------

/// W_{k,l} = sum_s w^{s k} |s><(s+l) mod d|.
ComplexMatrix weyl_operator(std::size_t d, std::size_t k, std::size_t l);

/// (W_{k,l} (x) 1)|phi+_d>.
PureState bell_state(std::size_t d, std::size_t k, std::size_t l);

class BellDiagonalCoeffs {
public:
    /// Grid c(k, l) >= 0 summing to 1; throws DomainError otherwise.
    explicit BellDiagonalCoeffs(RealMatrix c);

    std::size_t dim() const noexcept { return static_cast<std::size_t>(c_.rows()); }
    const RealMatrix& grid() const noexcept { return c_; }
    double h() const { return c_.maxCoeff(); }
    /// Location (k, l) of the largest coefficient.
    std::pair<std::size_t, std::size_t> dominant() const;

private:
    RealMatrix c_;
};

DensityMatrix bell_diagonal_state(const BellDiagonalCoeffs& coeffs);

struct EnclosureReport {
    /// I_{d+1} with every basis labeled to align with the dominant Bell state.
    CriterionReport aligned;
    /// 1 + h d
    double closed_form = 0.0;
    /// Per-basis optimal relabeling (always >= aligned).
    CriterionReport optimal;
};

/// Evaluates I_{d+1} on the Bell-diagonal state with a complete `mub` on A and
/// its conjugate on B. Throws DomainError for an incomplete set, or when the
/// Weyl operators do not permute the vectors of every basis of `mub`.
EnclosureReport enclosure_check(const BellDiagonalCoeffs& coeffs, const MubSet& mub);

}  // namespace mubent
