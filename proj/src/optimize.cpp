#include "mubent/optimize.hpp"

#include <cmath>
#include <exception>
#include <numbers>
#include <random>

#include <boost/math/tools/minima.hpp>

#include "mubent/assignment.hpp"
#include "mubent/errors.hpp"

namespace mubent {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kGridPoints = 12;
constexpr int kBrentBits = 26;

void check_counts(const UnitaryParams& p) {
    const std::size_t d = p.dim;
    if (d < 1 || p.angles.size() != d * (d - 1) / 2 || p.phases.size() != d * (d - 1) / 2 ||
        p.diagonal_phases.size() != d - 1) {
        throw DomainError("UnitaryParams: parameter counts do not match the dimension");
    }
}

// I_m of the rotated state from the rotated bases. One side is held fixed and
// its contraction with rho cached, so that varying the other side under a
// fixed labeling costs O(m d^3) per evaluation.
class Evaluator {
public:
    Evaluator(const DensityMatrix& rho, const MubSet& mub) : d_(mub.dim()) {
        if (rho.dim() != d_ * d_) throw DomainError("objective: state dimension must be d^2 for the MUB dimension d");
        rho_ = rho.matrix();
        for (const auto& b : mub.bases()) {
            a_.push_back(b.matrix());
            b_.push_back(b.matrix().conjugate());
        }
    }

    // Rotated bases are U^dagger times the measurement bases.
    void set(const ComplexMatrix& ua, const ComplexMatrix& ub) {
        ra_.clear();
        rb_.clear();
        for (std::size_t k = 0; k < a_.size(); ++k) {
            ra_.push_back(ua.adjoint() * a_[k]);
            rb_.push_back(ub.adjoint() * b_[k]);
        }
    }

    // Caches blocks[k][j] = (1 (x) b'_j)^dagger rho (1 (x) b'_j) (side 0 varies)
    // or blocks[k][i] = (a'_i (x) 1)^dagger rho (a'_i (x) 1) (side 1 varies).
    void freeze(int varying_side) {
        varying_ = varying_side;
        const auto d = static_cast<Eigen::Index>(d_);
        blocks_.assign(a_.size(), std::vector<ComplexMatrix>(d_, ComplexMatrix::Zero(d, d)));
        for (std::size_t k = 0; k < a_.size(); ++k) {
            const ComplexMatrix& fixed = varying_side == 0 ? rb_[k] : ra_[k];
            for (Eigen::Index t = 0; t < d; ++t) {
                ComplexMatrix& blk = blocks_[k][static_cast<std::size_t>(t)];
                for (Eigen::Index x = 0; x < d; ++x)
                    for (Eigen::Index y = 0; y < d; ++y) {
                        Complex acc = 0.0;
                        for (Eigen::Index p = 0; p < d; ++p) {
                            const Complex fp = std::conj(fixed(p, t));
                            for (Eigen::Index q = 0; q < d; ++q) {
                                const Complex r = varying_side == 0 ? rho_(x * d + p, y * d + q)
                                                                    : rho_(p * d + x, q * d + y);
                                acc += fp * r * fixed(q, t);
                            }
                        }
                        blk(x, y) = acc;
                    }
            }
        }
    }

    // Sum over bases of P(i, labels[k][i]) with the varying side replaced by `u`.
    double value_with(const ComplexMatrix& u, const std::vector<std::vector<int>>& labels) const {
        const auto d = static_cast<Eigen::Index>(d_);
        const std::vector<ComplexMatrix>& base = varying_ == 0 ? a_ : b_;
        double total = 0.0;
        ComplexMatrix rot(d, d);
        for (std::size_t k = 0; k < base.size(); ++k) {
            rot.noalias() = u.adjoint() * base[k];
            for (Eigen::Index i = 0; i < d; ++i) {
                const Eigen::Index j = labels[k][static_cast<std::size_t>(i)];
                // v: outcome on the varying side, t: outcome on the cached side
                const Eigen::Index v = varying_ == 0 ? i : j;
                const Eigen::Index t = varying_ == 0 ? j : i;
                const ComplexMatrix& blk = blocks_[k][static_cast<std::size_t>(t)];
                Complex acc = 0.0;
                for (Eigen::Index x = 0; x < d; ++x) {
                    Complex row = 0.0;
                    for (Eigen::Index y = 0; y < d; ++y) row += blk(x, y) * rot(y, v);
                    acc += std::conj(rot(x, v)) * row;
                }
                total += acc.real();
            }
        }
        return total;
    }

    // Joint probability matrices of the current rotated bases (A rows, B columns).
    std::vector<RealMatrix> joint() const {
        const auto d = static_cast<Eigen::Index>(d_);
        std::vector<RealMatrix> out;
        ComplexVector w(d * d);
        for (std::size_t k = 0; k < ra_.size(); ++k) {
            RealMatrix p(d, d);
            for (Eigen::Index i = 0; i < d; ++i)
                for (Eigen::Index j = 0; j < d; ++j) {
                    for (Eigen::Index x = 0; x < d; ++x)
                        for (Eigen::Index y = 0; y < d; ++y) w(x * d + y) = ra_[k](x, i) * rb_[k](y, j);
                    p(i, j) = w.dot(rho_ * w).real();
                }
            out.push_back(std::move(p));
        }
        return out;
    }

private:
    std::size_t d_;
    ComplexMatrix rho_;
    std::vector<ComplexMatrix> a_, b_, ra_, rb_;
    int varying_ = 0;
    std::vector<std::vector<ComplexMatrix>> blocks_;
};

CriterionReport report_from(const Evaluator& ev, std::size_t d, bool relabel) {
    std::vector<double> values;
    std::vector<std::vector<int>> labelings;
    for (const RealMatrix& p : ev.joint()) {
        if (relabel) {
            Assignment a = max_weight_assignment(p);
            values.push_back(a.value);
            labelings.push_back(std::move(a.permutation));
        } else {
            values.push_back(p.trace());
        }
    }
    const std::size_t m = values.size();
    CriterionReport rep = make_report(std::move(values), separable_bound(m, d));
    rep.labelings = std::move(labelings);
    return rep;
}

struct RestartOutcome {
    double value = 0.0;
    std::vector<double> xa, xb;
    bool converged = false;
    std::size_t sweeps = 0;
};

std::vector<std::vector<int>> identity_labels(std::size_t m, std::size_t d) {
    std::vector<int> id(d);
    for (std::size_t i = 0; i < d; ++i) id[i] = static_cast<int>(i);
    return std::vector<std::vector<int>>(m, id);
}

// Maximizes f over one coordinate starting at x0 (value f0). With the
// labeling fixed, f restricted to one angle or phase lies in
// span{1, cos t, sin t, cos 2t, sin 2t}; five equispaced samples determine it,
// and the model is maximized by a grid scan refined with Brent's method.
template <class F>
double line_search(F f, double x0, double f0) {
    constexpr int kSamples = 5;
    double samples[kSamples];
    samples[0] = f0;
    const double h = kTwoPi / kSamples;
    for (int j = 1; j < kSamples; ++j) samples[j] = f(x0 + j * h);
    double a0 = 0.0, a1 = 0.0, b1 = 0.0, a2 = 0.0, b2 = 0.0;
    for (int j = 0; j < kSamples; ++j) {
        const double t = j * h;
        a0 += samples[j] / kSamples;
        a1 += 2.0 * samples[j] * std::cos(t) / kSamples;
        b1 += 2.0 * samples[j] * std::sin(t) / kSamples;
        a2 += 2.0 * samples[j] * std::cos(2 * t) / kSamples;
        b2 += 2.0 * samples[j] * std::sin(2 * t) / kSamples;
    }
    auto model = [&](double t) {
        return a0 + a1 * std::cos(t) + b1 * std::sin(t) + a2 * std::cos(2 * t) + b2 * std::sin(2 * t);
    };
    const double g = kTwoPi / kGridPoints;
    double best_t = 0.0, best = model(0.0);
    for (int k = 1; k < kGridPoints; ++k) {
        const double val = model(k * g);
        if (val > best) {
            best = val;
            best_t = k * g;
        }
    }
    std::uintmax_t iters = 100;
    const auto [t_opt, neg] =
        boost::math::tools::brent_find_minima([&](double t) { return -model(t); }, best_t - g, best_t + g,
                                              kBrentBits, iters);
    return x0 + (-neg > best ? t_opt : best_t);
}

RestartOutcome run_restart(const DensityMatrix& rho, const MubSet& mub, const OptimizerConfig& config,
                           std::vector<double> xa, std::vector<double> xb) {
    const std::size_t d = mub.dim();
    Evaluator ev(rho, mub);
    ComplexMatrix ua = parameterize_unitary(UnitaryParams::unflatten(d, xa));
    ComplexMatrix ub = parameterize_unitary(UnitaryParams::unflatten(d, xb));

    // Block ascent: coordinates with the labeling held fixed, then the optimal
    // labeling for the new unitaries. Neither step can lower the objective.
    auto relabeled = [&](std::vector<std::vector<int>>& labels) {
        ev.set(ua, ub);
        double total = 0.0;
        const auto joint = ev.joint();
        for (std::size_t k = 0; k < joint.size(); ++k) {
            if (config.relabel) {
                Assignment asg = max_weight_assignment(joint[k]);
                labels[k] = std::move(asg.permutation);
                total += asg.value;
            } else {
                total += joint[k].trace();
            }
        }
        return total;
    };
    std::vector<std::vector<int>> labels = identity_labels(mub.size(), d);
    double current = relabeled(labels);

    RestartOutcome out;
    for (std::size_t sweep = 0; sweep < config.max_sweeps; ++sweep) {
        const double start = current;
        double fixed = current;  // objective under the fixed labeling
        for (int side = 0; side < 2; ++side) {
            std::vector<double>& x = side == 0 ? xa : xb;
            ev.set(ua, ub);
            ev.freeze(side);
            for (std::size_t c = 0; c < x.size(); ++c) {
                const double x0 = x[c];
                auto f = [&](double t) {
                    x[c] = t;
                    return ev.value_with(parameterize_unitary(UnitaryParams::unflatten(d, x)), labels);
                };
                const double candidate = std::remainder(line_search(f, x0, fixed), kTwoPi);
                const double wrapped = candidate < 0 ? candidate + kTwoPi : candidate;
                const double val = f(wrapped);
                if (val > fixed) {
                    fixed = val;
                    x[c] = wrapped;
                } else {
                    x[c] = x0;
                }
            }
            (side == 0 ? ua : ub) = parameterize_unitary(UnitaryParams::unflatten(d, x));
        }
        current = std::max(fixed, relabeled(labels));
        out.sweeps = sweep + 1;
        if (current - start < config.convergence) {
            out.converged = true;
            break;
        }
    }
    out.value = current;
    out.xa = std::move(xa);
    out.xb = std::move(xb);
    return out;
}

}  // namespace

UnitaryParams UnitaryParams::zero(std::size_t d) {
    if (d < 1) throw DomainError("UnitaryParams: dimension must be positive");
    UnitaryParams p;
    p.dim = d;
    p.angles.assign(d * (d - 1) / 2, 0.0);
    p.phases.assign(d * (d - 1) / 2, 0.0);
    p.diagonal_phases.assign(d - 1, 0.0);
    return p;
}

UnitaryParams UnitaryParams::random(std::size_t d, Rng& rng) {
    UnitaryParams p = zero(d);
    std::uniform_real_distribution<double> angle(0.0, std::numbers::pi / 2);
    std::uniform_real_distribution<double> phase(0.0, kTwoPi);
    for (auto& a : p.angles) a = angle(rng);
    for (auto& a : p.phases) a = phase(rng);
    for (auto& a : p.diagonal_phases) a = phase(rng);
    return p;
}

std::vector<double> UnitaryParams::flatten() const {
    check_counts(*this);
    std::vector<double> x(angles);
    x.insert(x.end(), phases.begin(), phases.end());
    x.insert(x.end(), diagonal_phases.begin(), diagonal_phases.end());
    return x;
}

UnitaryParams UnitaryParams::unflatten(std::size_t d, const std::vector<double>& x) {
    if (d < 1 || x.size() != count(d)) throw DomainError("UnitaryParams: expected d^2 - 1 parameters");
    const std::size_t pairs = d * (d - 1) / 2;
    UnitaryParams p;
    p.dim = d;
    p.angles.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(pairs));
    p.phases.assign(x.begin() + static_cast<std::ptrdiff_t>(pairs), x.begin() + static_cast<std::ptrdiff_t>(2 * pairs));
    p.diagonal_phases.assign(x.begin() + static_cast<std::ptrdiff_t>(2 * pairs), x.end());
    return p;
}

ComplexMatrix parameterize_unitary(const UnitaryParams& params) {
    check_counts(params);
    const auto d = static_cast<Eigen::Index>(params.dim);
    ComplexMatrix u = ComplexMatrix::Identity(d, d);
    std::size_t g = 0;
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = i + 1; j < d; ++j, ++g) {
            const double c = std::cos(params.angles[g]);
            const double s = std::sin(params.angles[g]);
            const Complex e = std::polar(1.0, params.phases[g]);
            // right-multiply by G_ij
            for (Eigen::Index r = 0; r < d; ++r) {
                const Complex ci = u(r, i);
                const Complex cj = u(r, j);
                u(r, i) = c * ci + e * s * cj;
                u(r, j) = -std::conj(e) * s * ci + c * cj;
            }
        }
    }
    for (Eigen::Index r = 1; r < d; ++r) u.row(r) *= std::polar(1.0, params.diagonal_phases[static_cast<std::size_t>(r - 1)]);
    return u;
}

double objective(const DensityMatrix& rho, const MubSet& mub, const UnitaryParams& params_a,
                 const UnitaryParams& params_b, bool relabel) {
    return objective_report(rho, mub, params_a, params_b, relabel).aggregate;
}

CriterionReport objective_report(const DensityMatrix& rho, const MubSet& mub, const UnitaryParams& params_a,
                                 const UnitaryParams& params_b, bool relabel) {
    if (params_a.dim != mub.dim() || params_b.dim != mub.dim()) {
        throw DomainError("objective: unitary dimension differs from the MUB dimension");
    }
    Evaluator ev(rho, mub);
    ev.set(parameterize_unitary(params_a), parameterize_unitary(params_b));
    return report_from(ev, mub.dim(), relabel);
}

OptimizeResult maximize_im(const DensityMatrix& rho, const MubSet& mub, const OptimizerConfig& config) {
    if (config.restarts < 1 || config.max_sweeps < 1 || !(config.convergence > 0.0)) {
        throw DomainError("maximize_im: restarts, max_sweeps and convergence must be positive");
    }
    const std::size_t d = mub.dim();
    if (rho.dim() != d * d) throw DomainError("maximize_im: state dimension must be d^2 for the MUB dimension d");

    // Starting points are drawn up front so results do not depend on thread count.
    Rng rng(config.seed);
    std::vector<std::vector<double>> starts_a, starts_b;
    for (std::size_t r = 0; r < config.restarts; ++r) {
        if (r == 0) {
            starts_a.push_back(UnitaryParams::zero(d).flatten());
            starts_b.push_back(UnitaryParams::zero(d).flatten());
        } else {
            starts_a.push_back(UnitaryParams::random(d, rng).flatten());
            starts_b.push_back(UnitaryParams::random(d, rng).flatten());
        }
    }

    std::vector<RestartOutcome> outcomes(config.restarts);
    std::exception_ptr failure;
    const auto n = static_cast<std::ptrdiff_t>(config.restarts);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t r = 0; r < n; ++r) {
        try {
            const auto ru = static_cast<std::size_t>(r);
            outcomes[ru] = run_restart(rho, mub, config, starts_a[ru], starts_b[ru]);
        } catch (...) {
#pragma omp critical
            failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    std::size_t best = 0;
    OptimizeResult result;
    for (std::size_t r = 0; r < outcomes.size(); ++r) {
        result.restart_values.push_back(outcomes[r].value);
        if (outcomes[r].value > outcomes[best].value) best = r;
    }
    result.params_a = UnitaryParams::unflatten(d, outcomes[best].xa);
    result.params_b = UnitaryParams::unflatten(d, outcomes[best].xb);
    result.converged = outcomes[best].converged;
    result.sweeps = outcomes[best].sweeps;
    result.report = objective_report(rho, mub, result.params_a, result.params_b, config.relabel);
    result.best_value = result.report.aggregate;
    return result;
}

}  // namespace mubent
