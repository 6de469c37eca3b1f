#include "mubent/criteria.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "mubent/assignment.hpp"
#include "mubent/errors.hpp"
#include "mubent/kernels.hpp"

namespace mubent {

CriterionReport make_report(std::vector<double> values, double bound, double threshold) {
    CriterionReport r;
    r.values = std::move(values);
    for (double v : r.values) r.aggregate += v;
    r.bound = bound;
    r.margin = r.aggregate - bound;
    r.violated = r.margin > threshold;
    return r;
}

double separable_bound(std::size_t m, std::size_t d) {
    return 1.0 + static_cast<double>(m - 1) / static_cast<double>(d);
}

namespace {

void check_pair(const DensityMatrix& rho, const Basis& a, const Basis& b) {
    if (a.dim() != b.dim() || rho.dim() != a.dim() * b.dim()) {
        throw DomainError("mutual_predictability: need dim(rho) = d*d with both bases in dimension d");
    }
}

}  // namespace

RealMatrix joint_probabilities(const DensityMatrix& rho, const Basis& a, const Basis& b) {
    check_pair(rho, a, b);
    return kernels::parallel::joint_probabilities(rho.matrix(), a.matrix(), b.matrix());
}

double mutual_predictability(const DensityMatrix& rho, const Basis& a, const Basis& b) {
    return joint_probabilities(rho, a, b).trace();
}

Relabeling optimal_relabeling(const DensityMatrix& rho, const Basis& a, const Basis& b) {
    const auto best = max_weight_assignment(joint_probabilities(rho, a, b));
    return {best.value, best.permutation};
}

CriterionReport i_m(const DensityMatrix& rho, const MubSet& mub_a, const MubSet& mub_b, ImOptions opts) {
    if (mub_a.dim() != mub_b.dim() || mub_a.size() != mub_b.size()) {
        throw DomainError("i_m: A and B sets must agree in dimension and number of bases");
    }
    if (rho.dim() != mub_a.dim() * mub_b.dim()) throw DomainError("i_m: state dimension must be d^2");
    std::vector<double> values;
    std::vector<std::vector<int>> labelings;
    for (std::size_t k = 0; k < mub_a.size(); ++k) {
        if (opts.relabel) {
            auto r = optimal_relabeling(rho, mub_a[k], mub_b[k]);
            values.push_back(r.value);
            labelings.push_back(std::move(r.permutation));
        } else {
            values.push_back(mutual_predictability(rho, mub_a[k], mub_b[k]));
        }
    }
    auto rep = make_report(std::move(values), separable_bound(mub_a.size(), mub_a.dim()));
    rep.labelings = std::move(labelings);
    return rep;
}

CriterionReport i_m(const DensityMatrix& rho, const MubSet& mub, ImOptions opts) {
    return i_m(rho, mub, conjugate_mub_set(mub), opts);
}

// ---------------------------------------------------------------------------

double isotropic_alpha_min(std::size_t d) {
    if (d < 2) return 0.0;
    return -1.0 / static_cast<double>(d * d - 1);
}

DensityMatrix isotropic_state(std::size_t d, double alpha) {
    if (d == 0) throw DomainError("isotropic_state: d must be positive");
    if (!(alpha >= isotropic_alpha_min(d) - 1e-15 && alpha <= 1.0)) {
        std::ostringstream os;
        os << "isotropic_state: alpha=" << alpha << " outside [" << isotropic_alpha_min(d) << ", 1]";
        throw DomainError(os.str());
    }
    const auto n = static_cast<Eigen::Index>(d * d);
    ComplexVector phi = ComplexVector::Zero(n);
    for (std::size_t i = 0; i < d; ++i) phi(static_cast<Eigen::Index>(i * d + i)) = 1.0;
    phi /= std::sqrt(static_cast<double>(d));
    ComplexMatrix m = alpha * (phi * phi.adjoint());
    m.diagonal().array() += (1.0 - alpha) / static_cast<double>(d * d);
    return DensityMatrix(std::move(m));
}

double isotropic_threshold(std::size_t d, std::size_t m, const MubSet& mub_a) {
    if (mub_a.dim() != d || mub_a.size() != m) {
        throw DomainError("isotropic_threshold: MUB set must hold m bases in dimension d");
    }
    if (m < 2) throw DomainError("isotropic_threshold: a single basis never detects entanglement");
    const MubSet mub_b = conjugate_mub_set(mub_a);
    auto violated = [&](double alpha) { return i_m(isotropic_state(d, alpha), mub_a, mub_b).violated; };
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-9; ++it) {
        const double mid = 0.5 * (lo + hi);
        (violated(mid) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------

namespace {

void check_schmidt(const std::vector<double>& lambdas, std::size_t d) {
    if (lambdas.empty() || lambdas.size() > d) {
        throw DomainError("schmidt_i2: need between 1 and d Schmidt coefficients");
    }
    double norm2 = 0.0;
    for (double l : lambdas) {
        if (!(l >= 0.0)) throw DomainError("schmidt_i2: coefficients must be non-negative");
        norm2 += l * l;
    }
    if (std::abs(norm2 - 1.0) > kDefaultTolerances.structural) {
        throw DomainError("schmidt_i2: coefficients are not normalized");
    }
}

ComplexMatrix fourier_matrix(std::size_t d) {
    const auto n = static_cast<Eigen::Index>(d);
    ComplexMatrix f(n, n);
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    for (Eigen::Index k = 0; k < n; ++k)
        for (Eigen::Index i = 0; i < n; ++i)
            f(k, i) = norm * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>((k * i) % n) /
                                                  static_cast<double>(d));
    return f;
}

}  // namespace

double schmidt_i2(const std::vector<double>& lambdas, std::size_t d) {
    check_schmidt(lambdas, d);
    double cross = 0.0;
    for (std::size_t m = 0; m < lambdas.size(); ++m)
        for (std::size_t n = 0; n < lambdas.size(); ++n)
            if (m != n) cross += lambdas[m] * lambdas[n];
    return 1.0 + (1.0 + cross) / static_cast<double>(d);
}

double schmidt_i2_direct(const std::vector<double>& lambdas, std::size_t d) {
    check_schmidt(lambdas, d);
    const auto n = static_cast<Eigen::Index>(d);
    ComplexVector psi = ComplexVector::Zero(n * n);
    for (std::size_t i = 0; i < lambdas.size(); ++i) psi(static_cast<Eigen::Index>(i) * (n + 1)) = lambdas[i];
    const DensityMatrix rho = PureState(psi).projector();
    const Basis comp = Basis::computational(d);
    const Basis fourier(fourier_matrix(d));
    return mutual_predictability(rho, comp, comp) + mutual_predictability(rho, fourier, fourier.conjugate());
}

CriterionReport pure_state_i2(const PureState& psi, std::size_t d) {
    const auto s = schmidt_decompose(psi, d, d);
    const ComplexMatrix f = fourier_matrix(d);
    const DensityMatrix rho = psi.projector();
    const Basis a2(s.basis_a.matrix() * f);
    const Basis b2(s.basis_b.matrix() * f.conjugate());
    return make_report({mutual_predictability(rho, s.basis_a, s.basis_b), mutual_predictability(rho, a2, b2)},
                       separable_bound(2, d));
}

// ---------------------------------------------------------------------------

ComplexMatrix weyl_operator(std::size_t d, std::size_t k, std::size_t l) {
    if (d == 0 || k >= d || l >= d) throw DomainError("weyl_operator: indices must lie in [0, d)");
    const auto n = static_cast<Eigen::Index>(d);
    ComplexMatrix w = ComplexMatrix::Zero(n, n);
    for (std::size_t s = 0; s < d; ++s) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>((s * k) % d) / static_cast<double>(d);
        w(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>((s + l) % d)) = std::polar(1.0, angle);
    }
    return w;
}

PureState bell_state(std::size_t d, std::size_t k, std::size_t l) {
    const ComplexMatrix w = weyl_operator(d, k, l);
    const auto n = static_cast<Eigen::Index>(d);
    ComplexVector omega = ComplexVector::Zero(n * n);
    for (Eigen::Index i = 0; i < n; ++i) omega(i * n + i) = 1.0 / std::sqrt(static_cast<double>(d));
    // (W (x) 1) sum_i |i>|i> = sum_i (W|i>) |i>
    ComplexVector out = ComplexVector::Zero(n * n);
    for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index i = 0; i < n; ++i) out(a * n + i) = w(a, i) * omega(i * n + i);
    return PureState::normalized(out);
}

BellDiagonalCoeffs::BellDiagonalCoeffs(RealMatrix c) : c_(std::move(c)) {
    if (c_.rows() != c_.cols() || c_.rows() < 2) throw DomainError("BellDiagonalCoeffs: need a d x d grid, d >= 2");
    if (!c_.allFinite() || c_.minCoeff() < 0.0) throw DomainError("BellDiagonalCoeffs: coefficients must be >= 0");
    if (std::abs(c_.sum() - 1.0) > 1e-12) throw DomainError("BellDiagonalCoeffs: coefficients must sum to 1");
}

std::pair<std::size_t, std::size_t> BellDiagonalCoeffs::dominant() const {
    Eigen::Index k = 0, l = 0;
    c_.maxCoeff(&k, &l);
    return {static_cast<std::size_t>(k), static_cast<std::size_t>(l)};
}

DensityMatrix bell_diagonal_state(const BellDiagonalCoeffs& coeffs) {
    const std::size_t d = coeffs.dim();
    const auto n = static_cast<Eigen::Index>(d * d);
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) {
            const double c = coeffs.grid()(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l));
            if (c == 0.0) continue;
            const PureState bell = bell_state(d, k, l);
            const auto& v = bell.amplitudes();
            m += c * (v * v.adjoint());
        }
    return DensityMatrix(std::move(m));
}

EnclosureReport enclosure_check(const BellDiagonalCoeffs& coeffs, const MubSet& mub) {
    const std::size_t d = coeffs.dim();
    if (mub.dim() != d) throw DomainError("enclosure_check: MUB dimension differs from the coefficient grid");
    if (!mub.complete()) throw DomainError("enclosure_check: a complete set of d+1 bases is required");

    const DensityMatrix rho = bell_diagonal_state(coeffs);
    const MubSet conj = conjugate_mub_set(mub);
    const auto [k, l] = coeffs.dominant();
    const ComplexMatrix w = weyl_operator(d, k, l);

    // For the Bell state (W (x) 1)|phi+>, measured in basis x on A and x* on B,
    // P(i, j) = |<i_x|W|j_x>|^2 / d, so the aligned labeling pairs i with the j
    // that W maps onto i_x.
    std::vector<double> values;
    std::vector<std::vector<int>> labelings;
    for (std::size_t x = 0; x < mub.size(); ++x) {
        const ComplexMatrix u = mub[x].matrix();
        const ComplexMatrix mapped = u.adjoint() * w * u;
        std::vector<int> sigma(d, -1);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                if (std::abs(mapped(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))) > 1.0 - 1e-8) {
                    sigma[i] = static_cast<int>(j);
                }
            }
            if (sigma[i] < 0) {
                throw DomainError("enclosure_check: Weyl operators do not permute the vectors of basis " +
                                  std::to_string(x));
            }
        }
        const RealMatrix p = joint_probabilities(rho, mub[x], conj[x]);
        double c = 0.0;
        for (std::size_t i = 0; i < d; ++i) c += p(static_cast<Eigen::Index>(i), sigma[i]);
        values.push_back(c);
        labelings.push_back(std::move(sigma));
    }

    EnclosureReport rep;
    rep.aligned = make_report(std::move(values), separable_bound(mub.size(), d));
    rep.aligned.labelings = std::move(labelings);
    rep.closed_form = 1.0 + coeffs.h() * static_cast<double>(d);
    rep.optimal = i_m(rho, mub, conj, ImOptions{.relabel = true});
    return rep;
}

}  // namespace mubent
