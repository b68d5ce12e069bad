#include "cogber/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace cogber {

namespace {

// 15-point Kronrod abscissae on [-1, 1] (positive half) and weights, with the
// embedded 7-point Gauss weights on the shared nodes.
constexpr double kNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Interval {
    double lo, hi;
    double value;
    double error;
};

// The 7-point Gauss rule shares the odd-indexed Kronrod nodes plus the center.
Interval evaluate(const std::function<double(double)>& f, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);

    double kronrod = 0.0;
    double gauss = 0.0;
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kNodes[j];
        const double pair_sum = f(center - dx) + f(center + dx);
        kronrod += kKronrodWeights[j] * pair_sum;
        if (j % 2 == 1) {
            gauss += kGaussWeights[j / 2] * pair_sum;
        }
    }
    const double f_center = f(center);
    kronrod += kKronrodWeights[7] * f_center;
    gauss += kGaussWeights[3] * f_center;

    Interval out;
    out.lo = lo;
    out.hi = hi;
    out.value = kronrod * half;
    out.error = std::abs((kronrod - gauss) * half);
    return out;
}

} // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    std::span<const double> breakpoints,
                                    double rel_tol, double abs_tol,
                                    std::size_t max_intervals) {
    if (breakpoints.size() < 2) {
        throw QuadratureError("integrate_adaptive: need at least two breakpoints");
    }

    std::vector<Interval> intervals;
    intervals.reserve(64);
    std::size_t evals = 0;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        intervals.push_back(evaluate(f, breakpoints[i], breakpoints[i + 1]));
        evals += 15;
    }

    for (;;) {
        double total = 0.0;
        double err = 0.0;
        for (const Interval& iv : intervals) {
            total += iv.value;
            err += iv.error;
        }
        const double target = std::max(abs_tol, rel_tol * std::abs(total));
        if (err <= target) {
            return {total, err, evals};
        }
        if (intervals.size() >= max_intervals) {
            throw QuadratureError("integrate_adaptive: tolerance not reached after " +
                                  std::to_string(intervals.size()) + " intervals");
        }

        auto worst = std::max_element(
            intervals.begin(), intervals.end(),
            [](const Interval& a, const Interval& b) { return a.error < b.error; });
        const double lo = worst->lo;
        const double hi = worst->hi;
        const double mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) {
            throw QuadratureError("integrate_adaptive: interval too small to split");
        }
        *worst = evaluate(f, lo, mid);
        intervals.push_back(evaluate(f, mid, hi));
        evals += 30;
    }
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double lo, double hi,
                                    double rel_tol, double abs_tol,
                                    std::size_t max_intervals) {
    const double pts[2] = {lo, hi};
    return integrate_adaptive(f, std::span<const double>(pts, 2), rel_tol,
                              abs_tol, max_intervals);
}

} // namespace cogber
