#pragma once

// Genuine multipartite entanglement test for permutation-antisymmetric
// n-qudit states (local dimension n): the anti-correlation function
//   A = sum over index tuples with pairwise distinct entries of P(tuple)
// and J_m = sum of A over m common MUBs, bounded by 1 + (m-1)/n for
// biseparable states.

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "mubent/criteria.hpp"
#include "mubent/mubs.hpp"
#include "mubent/qmath.hpp"

namespace mubent {

/// Largest Hilbert-space dimension for which a density representation is kept.
inline constexpr std::size_t kMaxMultipartiteDensityDim = 512;

class MultipartiteState {
public:
    static MultipartiteState pure(std::size_t parties, std::size_t local_dim, PureState psi);
    /// Throws SizeError when local_dim^parties exceeds kMaxMultipartiteDensityDim.
    static MultipartiteState mixed(std::size_t parties, std::size_t local_dim, DensityMatrix rho);

    std::size_t parties() const noexcept { return parties_; }
    std::size_t local_dim() const noexcept { return local_dim_; }
    bool is_pure() const noexcept { return std::holds_alternative<PureState>(repr_); }
    const PureState& pure_state() const { return std::get<PureState>(repr_); }
    const DensityMatrix& density() const { return std::get<DensityMatrix>(repr_); }

private:
    MultipartiteState(std::size_t parties, std::size_t local_dim, std::variant<PureState, DensityMatrix> repr)
        : parties_(parties), local_dim_(local_dim), repr_(std::move(repr)) {}

    std::size_t parties_;
    std::size_t local_dim_;
    std::variant<PureState, DensityMatrix> repr_;
};

/// J_m and its biseparable bound; same layout as the bipartite report.
using AntiCorrReport = CriterionReport;

/// Sign of the permutation given by `indices` (each in [0, n)), 0 on a repeat.
/// Throws DomainError for an out-of-range index.
int levi_civita(std::span<const std::size_t> indices);

/// (1/sqrt(n!)) sum eps_{j..l} |j..l>, 2 <= n <= 7 (SizeError otherwise).
MultipartiteState aharonov_state(std::size_t n);

/// Probability that all n outcomes are pairwise distinct when party k
/// measures in bases[k].
double anticorrelation(const MultipartiteState& state, std::span<const Basis> bases);

/// A_k with basis k of `mub` on every party, summed over k.
AntiCorrReport j_m(const MultipartiteState& state, const MubSet& mub);

/// Closed-form white-noise threshold on alpha for
/// alpha |S_n><S_n| + (1-alpha)/n^n; 2 <= n <= 12, 2 <= m <= n+1.
double aharonov_noise_threshold(std::size_t n, std::size_t m);

/// J_m of the Aharonov state mixed with white noise, via linearity:
/// alpha J_m(|S_n>) + (1-alpha) m n!/n^n. `mub` holds m bases in dimension n.
AntiCorrReport aharonov_white_noise_jm(std::size_t n, double alpha, const MubSet& mub);

/// Bisection (to 1e-9, at most 200 steps) of the violation predicate of
/// aharonov_white_noise_jm; the direct counterpart of aharonov_noise_threshold.
double aharonov_threshold_bisection(std::size_t n, const MubSet& mub);

}  // namespace mubent
