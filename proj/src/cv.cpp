#include "mubent/cv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "mubent/errors.hpp"

namespace mubent {

namespace {

using GaussKronrod = boost::math::quadrature::gauss_kronrod<double, 15>;

constexpr double kTarget = 1e-8;
// Boost's recursion compares the unscaled local error (floored at 2 eps |r|)
// with a width-scaled tolerance, so depth and tolerance must satisfy
// tol >= 4.4e-16 * 2^(depth+1) or every branch runs to max depth.
constexpr unsigned kMaxDepth = 12;
constexpr double kInnerRelTol = 1e-10;
constexpr double kOuterRelTol = 1e-10;

struct Coefficients {
    double plus;   // multiplies (q1 + q2)^2
    double minus;  // multiplies (q1 - q2)^2
};

Coefficients coefficients(Observable obs, double r) {
    const double lo = std::exp(-2.0 * r);
    const double hi = std::exp(2.0 * r);
    return obs == Observable::position ? Coefficients{lo, hi} : Coefficients{hi, lo};
}

void check_params(SqueezedParams params) {
    if (!std::isfinite(params.r) || params.r < 0.0) {
        throw DomainError("squeezing parameter r must be finite and non-negative");
    }
}

// Gauss-Kronrod on [a, b] after rescaling to [0, 1]. Boost tests the unscaled
// local error against a width-scaled tolerance, so very short intervals would
// otherwise never meet it.
template <class F>
double integrate_unit(F f, double a, double b, double tol, double& error) {
    const double width = b - a;
    auto h = [&](double s) { return f(a + width * s); };
    double err = 0.0;
    const double value = GaussKronrod::integrate(h, 0.0, 1.0, kMaxDepth, tol, &err);
    error = err * std::abs(width);
    return value * width;
}

// Integral over (lo, hi) of g, a function peaked at 0 with width ~scale. The
// range is split at 0 and each piece is mapped from the end nearest the peak,
// x = anchor +/- scale*atanh(t), which also handles infinite ends. A plain
// finite-interval rule misses the peak once the interval is much wider than it.
template <class F>
double integrate_line(F g, double lo, double hi, double scale, double tol, double& error) {
    if (lo < 0.0 && hi > 0.0) {
        double e1 = 0.0, e2 = 0.0;
        const double v = integrate_line(g, lo, 0.0, scale, tol, e1) + integrate_line(g, 0.0, hi, scale, tol, e2);
        error = e1 + e2;
        return v;
    }
    const bool upward = lo >= 0.0;
    const double anchor = upward ? lo : hi;
    const double far = upward ? hi : lo;
    const double t_max = std::isfinite(far) ? std::tanh(std::abs(far - anchor) / scale) : 1.0;
    auto mapped = [&](double t) {
        if (t >= 1.0) return 0.0;
        const double x = anchor + (upward ? scale : -scale) * std::atanh(t);
        if (!std::isfinite(x) || (upward ? x > far : x < far)) return 0.0;
        const double fx = g(x);
        if (fx == 0.0) return 0.0;
        return fx * scale / (1.0 - t * t);
    };
    error = 0.0;
    return t_max > 0.0 ? integrate_unit(mapped, 0.0, t_max, tol, error) : 0.0;
}

// Probability of the quadrant {s1*q1 > 0, s2*q2 > 0} (s = +1 or -1), integrated
// in the principal coordinates u = (q1+q2)/sqrt2, v = (q1-q2)/sqrt2, where the
// quadrant is a wedge: for fixed v it is an interval in u.
double quadrant_integral(Observable obs, double r, int s1, int s2, double& achieved) {
    const Coefficients c = coefficients(obs, r);
    const double scale_u = 2.0 / (2.0 * std::sqrt(c.plus));   // two standard deviations
    const double scale_v = 2.0 / (2.0 * std::sqrt(c.minus));
    const double inf = std::numeric_limits<double>::infinity();

    double worst_inner = 0.0;
    auto inner = [&](double v) {
        double lo = -inf, hi = inf;
        // s1 (u + v) > 0 and s2 (u - v) > 0
        if (s1 > 0) lo = std::max(lo, -v); else hi = std::min(hi, -v);
        if (s2 > 0) lo = std::max(lo, v); else hi = std::min(hi, v);
        if (!(lo < hi)) return 0.0;
        // q1 + q2 = sqrt2 u and q1 - q2 = sqrt2 v; forming q1 - q2 from u and v
        // would cancel badly once u >> v at large r.
        const double decay_v = -2.0 * c.minus * v * v;
        auto density = [&](double u) {
            const double exponent = decay_v - 2.0 * c.plus * u * u;
            return exponent < -745.0 ? 0.0 : (2.0 / std::numbers::pi) * std::exp(exponent);
        };
        double err = 0.0;
        const double val = integrate_line(density, lo, hi, scale_u, kInnerRelTol, err);
        worst_inner = std::max(worst_inner, err);
        return val;
    };

    // The inner integral switches on over |v| ~ scale_u (the wedge opening)
    // and decays over scale_v. When the opening is the narrower feature it
    // gets its own plain rule on [0, knee], with the mapped tail beyond.
    double total = 0.0, outer_err = 0.0;
    for (int side : {-1, 1}) {
        const double dir = side;
        double e1 = 0.0, e2 = 0.0;
        if (scale_u < scale_v) {
            const double knee = 6.0 * scale_u;
            total += integrate_unit(inner, std::min(0.0, dir * knee), std::max(0.0, dir * knee), kOuterRelTol, e1);
            total += integrate_line(inner, side > 0 ? knee : -inf, side > 0 ? inf : -knee, scale_v, kOuterRelTol, e2);
        } else {
            total += integrate_line(inner, side > 0 ? 0.0 : -inf, side > 0 ? inf : 0.0, scale_v, kOuterRelTol, e1);
        }
        outer_err += e1 + e2;
    }
    // Inner errors enter the outer integral weighted by the v-measure; the
    // worst one times the v scale stands in for that propagated term.
    achieved = outer_err + worst_inner * scale_v;
    return total;
}

}  // namespace

double squeezed_density(Observable obs, double r, double q1, double q2) {
    const Coefficients c = coefficients(obs, r);
    const double sum = q1 + q2;
    const double diff = q1 - q2;
    const double exponent = -c.plus * sum * sum - c.minus * diff * diff;
    if (exponent < -745.0) return 0.0;
    return (2.0 / std::numbers::pi) * std::exp(exponent);
}

double squeezed_correlation(Observable obs, double r) {
    const Coefficients c = coefficients(obs, r);
    // Var(q1+q2) = 1/(2c+), Var(q1-q2) = 1/(2c-)
    const double var_sum = 1.0 / (2.0 * c.plus);
    const double var_diff = 1.0 / (2.0 * c.minus);
    return (var_sum - var_diff) / (var_sum + var_diff);
}

BinnedProbabilities squeezed_quadrant_probs(SqueezedParams params, Observable obs, CvMethod method) {
    check_params(params);
    BinnedProbabilities out;
    out.observable = obs;
    if (method == CvMethod::closed_form) {
        // Sheppard: P(opposite signs) = acos(rho) / (2 pi). With
        // 1 - rho = 2 c+ / (c+ + c-) this is asin(sqrt(c+ / (c+ + c-))) / pi,
        // which keeps full precision when |rho| is close to 1.
        const Coefficients c = coefficients(obs, params.r);
        const double opposite = std::asin(std::sqrt(c.plus / (c.plus + c.minus))) / std::numbers::pi;
        const double same = 0.5 - opposite;
        out.p = {{{same, opposite}, {opposite, same}}};
        return out;
    }
    double worst = 0.0;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            double achieved = 0.0;
            out.p[a][b] = quadrant_integral(obs, params.r, a == 0 ? -1 : 1, b == 0 ? -1 : 1, achieved);
            worst = std::max(worst, achieved);
        }
    }
    out.achieved_accuracy = worst;
    if (!(worst <= kTarget)) {
        std::ostringstream os;
        os << "squeezed_quadrant_probs: quadrature reached only " << worst << " (target " << kTarget
           << ") at r=" << params.r;
        throw NumericalError(os.str(), worst);
    }
    return out;
}

CriterionReport cv_criterion(SqueezedParams params, CvMethod method) {
    const auto x = squeezed_quadrant_probs(params, Observable::position, method);
    const auto p = squeezed_quadrant_probs(params, Observable::momentum, method);
    const double c_xx = x.p[0][0] + x.p[1][1];
    const double c_pp = p.p[0][1] + p.p[1][0];
    return make_report({c_xx, c_pp}, kCvBound, kCvViolationMargin);
}

CvThresholdReport cv_threshold() {
    auto bisect = [](CvMethod method) {
        double lo = 0.0, hi = 2.0;
        while (hi - lo > 1e-8) {
            const double mid = 0.5 * (lo + hi);
            (cv_criterion({mid}, method).violated ? hi : lo) = mid;
        }
        return 0.5 * (lo + hi);
    };
    CvThresholdReport rep;
    rep.quadrature_r = bisect(CvMethod::quadrature);
    rep.closed_form_r = bisect(CvMethod::closed_form);
    rep.analytic_r = 0.5 * std::atanh(1.0 / std::numbers::sqrt2);
    rep.deviation = rep.closed_form_r - rep.literature_r;
    return rep;
}

std::vector<CvScanRow> cv_scan(const std::vector<double>& r_values, CvMethod method) {
    std::vector<CvScanRow> rows(r_values.size());
    const auto n = static_cast<std::ptrdiff_t>(r_values.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            const auto rep = cv_criterion({r_values[static_cast<std::size_t>(i)]}, method);
            rows[static_cast<std::size_t>(i)] = {r_values[static_cast<std::size_t>(i)], rep.values[0], rep.values[1],
                                                 rep.aggregate, rep.violated};
        } catch (...) {
#pragma omp critical
            failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return rows;
}

}  // namespace mubent
