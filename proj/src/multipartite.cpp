#include "mubent/multipartite.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mubent/errors.hpp"
#include "mubent/kernels.hpp"

namespace mubent {

namespace {

std::size_t ipow(std::size_t base, std::size_t exp) {
    std::size_t r = 1;
    for (std::size_t k = 0; k < exp; ++k) r *= base;
    return r;
}

double factorial(std::size_t n) {
    double f = 1.0;
    for (std::size_t k = 2; k <= n; ++k) f *= static_cast<double>(k);
    return f;
}

}  // namespace

MultipartiteState MultipartiteState::pure(std::size_t parties, std::size_t local_dim, PureState psi) {
    if (parties < 1 || local_dim < 1 || psi.dim() != ipow(local_dim, parties)) {
        throw DomainError("MultipartiteState: amplitude count must equal local_dim^parties");
    }
    return MultipartiteState(parties, local_dim, std::move(psi));
}

MultipartiteState MultipartiteState::mixed(std::size_t parties, std::size_t local_dim, DensityMatrix rho) {
    const std::size_t dim = ipow(local_dim, parties);
    if (dim > kMaxMultipartiteDensityDim) {
        throw SizeError("MultipartiteState: density representation limited to dimension 512");
    }
    if (parties < 1 || local_dim < 1 || rho.dim() != dim) {
        throw DomainError("MultipartiteState: density dimension must equal local_dim^parties");
    }
    return MultipartiteState(parties, local_dim, std::move(rho));
}

int levi_civita(std::span<const std::size_t> indices) {
    const std::size_t n = indices.size();
    for (std::size_t i : indices)
        if (i >= n) throw DomainError("levi_civita: index out of range");
    std::size_t inversions = 0;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            if (indices[a] == indices[b]) return 0;
            if (indices[a] > indices[b]) ++inversions;
        }
    }
    return inversions % 2 == 0 ? 1 : -1;
}

MultipartiteState aharonov_state(std::size_t n) {
    if (n < 2 || n > 7) throw SizeError("aharonov_state: n must lie in [2, 7]");
    const std::size_t dim = ipow(n, n);
    ComplexVector amps = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
    const double norm = 1.0 / std::sqrt(factorial(n));
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        std::size_t index = 0;
        for (std::size_t digit : perm) index = index * n + digit;
        amps(static_cast<Eigen::Index>(index)) = norm * levi_civita(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return MultipartiteState::pure(n, n, PureState(std::move(amps)));
}

double anticorrelation(const MultipartiteState& state, std::span<const Basis> bases) {
    const std::size_t n = state.parties();
    const std::size_t d = state.local_dim();
    if (bases.size() != n) throw DomainError("anticorrelation: need one basis per party");
    for (const auto& b : bases)
        if (b.dim() != d) throw DomainError("anticorrelation: basis dimension differs from the local dimension");
    if (d < n) return 0.0;  // n distinct outcomes are impossible

    if (state.is_pure()) {
        ComplexVector amps = state.pure_state().amplitudes();
        for (std::size_t axis = 0; axis < n; ++axis) {
            kernels::parallel::apply_local(amps, n, d, axis, bases[axis].matrix().adjoint());
        }
        return kernels::parallel::distinct_tuple_weight(amps, n, d);
    }
    std::vector<ComplexMatrix> ops;
    for (const auto& b : bases) ops.push_back(b.matrix());
    const Eigen::VectorXd diag = kernels::parallel::local_diagonal(state.density().matrix(), d, ops);
    double acc = 0.0;
    for (Eigen::Index t = 0; t < diag.size(); ++t)
        if (kernels::digits_distinct(static_cast<std::size_t>(t), n, d)) acc += diag(t);
    return acc;
}

AntiCorrReport j_m(const MultipartiteState& state, const MubSet& mub) {
    const std::size_t n = state.parties();
    if (mub.dim() != n || state.local_dim() != n) {
        throw DomainError("j_m: MUB dimension and local dimension must equal the number of parties");
    }
    std::vector<double> values(mub.size());
    for (std::size_t k = 0; k < mub.size(); ++k) {
        const std::vector<Basis> common(n, mub[k]);
        values[k] = anticorrelation(state, common);
    }
    return make_report(std::move(values), separable_bound(mub.size(), n));
}

double aharonov_noise_threshold(std::size_t n, std::size_t m) {
    if (n < 2 || n > 12 || m < 2 || m > n + 1) {
        throw DomainError("aharonov_noise_threshold: need 2 <= n <= 12 and 2 <= m <= n+1");
    }
    const long double nn = std::pow(static_cast<long double>(n), static_cast<long double>(n));
    long double fact = 1.0L;
    for (std::size_t k = 2; k <= n; ++k) fact *= static_cast<long double>(k);
    const auto ml = static_cast<long double>(m);
    const auto nl = static_cast<long double>(n);
    const long double num = nn * (ml + nl - 1.0L) - ml * nl * fact;
    const long double den = ml * nl * (nn - fact);
    return static_cast<double>(num / den);
}

AntiCorrReport aharonov_white_noise_jm(std::size_t n, double alpha, const MubSet& mub) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("aharonov_white_noise_jm: alpha outside [0, 1]");
    const AntiCorrReport pure = j_m(aharonov_state(n), mub);
    const double noise = factorial(n) / std::pow(static_cast<double>(n), static_cast<double>(n));
    std::vector<double> values;
    for (double a : pure.values) values.push_back(alpha * a + (1.0 - alpha) * noise);
    return make_report(std::move(values), pure.bound);
}

double aharonov_threshold_bisection(std::size_t n, const MubSet& mub) {
    if (mub.size() < 2) throw DomainError("aharonov_threshold_bisection: need at least two bases");
    const AntiCorrReport pure = j_m(aharonov_state(n), mub);
    const double noise = factorial(n) / std::pow(static_cast<double>(n), static_cast<double>(n));
    auto violated = [&](double alpha) {
        std::vector<double> values;
        for (double a : pure.values) values.push_back(alpha * a + (1.0 - alpha) * noise);
        return make_report(std::move(values), pure.bound).violated;
    };
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-9; ++it) {
        const double mid = 0.5 * (lo + hi);
        (violated(mid) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace mubent
