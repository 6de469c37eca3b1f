#pragma once

// Finite-shot estimation of mutual predictabilities by drawing outcome pairs
// from the exact joint distribution (inverse CDF, no Markov chains).

#include <cstdint>
#include <vector>

#include "mubent/mubs.hpp"
#include "mubent/qmath.hpp"

namespace mubent {

struct SampleEstimate {
    std::size_t shots = 0;
    std::vector<double> c_hat;           // per basis pair
    std::vector<double> standard_error;  // sqrt(C(1-C)/shots) per basis pair
    double i_hat = 0.0;
    double i_standard_error = 0.0;       // settings sampled independently
    std::vector<double> c_exact;
    double i_exact = 0.0;
    double bound = 0.0;
};

/// Basis k of `mub_a` on A, basis k of `mub_b` on B, `shots` draws per pair.
/// Deterministic in `seed`. Throws DomainError for shots == 0 or a
/// dimension mismatch.
SampleEstimate sample_im(const DensityMatrix& rho, const MubSet& mub_a, const MubSet& mub_b, std::size_t shots,
                         std::uint64_t seed);

}  // namespace mubent
