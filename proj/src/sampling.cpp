#include "mubent/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "mubent/criteria.hpp"
#include "mubent/errors.hpp"

namespace mubent {

SampleEstimate sample_im(const DensityMatrix& rho, const MubSet& mub_a, const MubSet& mub_b, std::size_t shots,
                         std::uint64_t seed) {
    if (shots == 0) throw DomainError("sample_im: shots must be at least 1");
    if (mub_a.size() != mub_b.size()) throw DomainError("sample_im: both parties need the same number of bases");
    const std::size_t d = mub_a.dim();

    SampleEstimate est;
    est.shots = shots;
    est.bound = separable_bound(mub_a.size(), d);
    Rng rng(seed);
    double var_sum = 0.0;
    for (std::size_t k = 0; k < mub_a.size(); ++k) {
        const RealMatrix p = joint_probabilities(rho, mub_a[k], mub_b[k]);
        // cumulative weights over cells (i, j) in row-major order
        std::vector<double> cdf;
        cdf.reserve(d * d);
        double acc = 0.0;
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                acc += std::max(0.0, p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
                cdf.push_back(acc);
            }
        std::uniform_real_distribution<double> uni(0.0, acc);
        std::size_t hits = 0;
        for (std::size_t s = 0; s < shots; ++s) {
            const double u = uni(rng);
            auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
            if (it == cdf.end()) --it;
            const auto cell = static_cast<std::size_t>(it - cdf.begin());
            if (cell / d == cell % d) ++hits;
        }
        const double c = static_cast<double>(hits) / static_cast<double>(shots);
        const double se = std::sqrt(c * (1.0 - c) / static_cast<double>(shots));
        est.c_hat.push_back(c);
        est.standard_error.push_back(se);
        est.c_exact.push_back(p.trace());
        est.i_hat += c;
        est.i_exact += p.trace();
        var_sum += se * se;
    }
    est.i_standard_error = std::sqrt(var_sum);
    return est;
}

}  // namespace mubent
