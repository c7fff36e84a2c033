#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "gridcell/errors.hpp"

namespace gridcell {

struct QuadratureResult {
    double value;
    double abs_error; // accumulated error estimate
    int evaluations;
};

namespace detail {

// Gauss-Kronrod 7-15 pair on [a, b]. Returns the K15 estimate, writes the
// error estimate of |K15 - G7| scaled the usual quadpack way.
template <class F>
double gauss_kronrod_15(F&& f, double a, double b, double& err, int& evals) {
    // node, G7 weight, K15 weight (x >= 0 half; nodes are symmetric)
    static const double nw[8][3] = {
        {0.000000000000000, 0.417959183673469, 0.209482141084728},
        {0.405845151377397, 0.381830050505119, 0.190350578064785},
        {0.741531185599394, 0.279705391489277, 0.140653259715525},
        {0.949107912342759, 0.129484966168870, 0.063092092629979},
        {0.207784955007898, 0.0, 0.204432940075298},
        {0.586087235467691, 0.0, 0.169004726639267},
        {0.864864423359769, 0.0, 0.104790010322250},
        {0.991455371120813, 0.0, 0.022935322010529},
    };

    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    double y0 = f(mid);
    double g7 = nw[0][1] * y0;
    double k15 = nw[0][2] * y0;
    for (int i = 1; i < 8; ++i) {
        const double dx = half * nw[i][0];
        const double yi = f(mid + dx) + f(mid - dx);
        g7 += nw[i][1] * yi;
        k15 += nw[i][2] * yi;
    }
    g7 *= half;
    k15 *= half;
    evals += 15;

    err = std::abs(k15 - g7);
    err = 200.0 * err * std::sqrt(std::max(err, 0.0));
    return k15;
}

} // namespace detail

// Adaptive quadrature of f over the finite interval [a, b]. Splits the
// interval with the largest error estimate until the accumulated estimate
// meets max(abs_tol, rel_tol * |integral|). Throws QuadratureError with the
// residual when the interval budget runs out.
template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b,
                                    double rel_tol = 1e-10, double abs_tol = 0.0) {
    struct Interval {
        double a, b, value, err;
    };

    constexpr std::size_t max_intervals = 4096;
    int evals = 0;

    std::vector<Interval> work;
    work.reserve(256);
    {
        double err;
        const double v = detail::gauss_kronrod_15(f, a, b, err, evals);
        work.push_back({a, b, v, err});
    }

    for (;;) {
        double total = 0.0, total_err = 0.0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < work.size(); ++i) {
            total += work[i].value;
            total_err += work[i].err;
            if (work[i].err > work[worst].err) worst = i;
        }
        const double goal = std::max(abs_tol, rel_tol * std::abs(total));
        if (total_err <= goal || work[worst].err == 0.0)
            return {total, total_err, evals};
        if (work.size() >= max_intervals)
            throw QuadratureError(total_err);

        const Interval split = work[worst];
        const double mid = 0.5 * (split.a + split.b);
        double err_l, err_r;
        const double vl = detail::gauss_kronrod_15(f, split.a, mid, err_l, evals);
        const double vr = detail::gauss_kronrod_15(f, mid, split.b, err_r, evals);
        work[worst] = {split.a, mid, vl, err_l};
        work.push_back({mid, split.b, vr, err_r});
    }
}

// Doubles `hi` (geometrically, starting from the given bracket) until
// f(lo) and f(hi) have opposite signs. Returns false if no sign change shows
// up within max_doublings.
template <class F>
bool expand_bracket(F&& f, double lo, double& hi, int max_doublings = 60) {
    const double flo = f(lo);
    double fhi = f(hi);
    for (int i = 0; i < max_doublings; ++i) {
        if ((flo <= 0.0 && fhi >= 0.0) || (flo >= 0.0 && fhi <= 0.0)) return true;
        hi *= 2.0;
        fhi = f(hi);
    }
    return false;
}

// Plain bisection to absolute tolerance on x. The bracket must straddle a
// sign change.
template <class F>
double find_root_bisect(F&& f, double lo, double hi, double x_tol = 1e-10) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw Error("find_root_bisect: bracket does not straddle a sign change");
    while (hi - lo > x_tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break; // ran out of doubles
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Standard normal tail probability Q(x) = P(Z >= x).
inline double gaussian_tail_q(double x) {
    return 0.5 * std::erfc(x * M_SQRT1_2);
}

// exp(x^2/2) * Q(x), evaluated without overflow for large x. Direct product
// up to x = 8; beyond that the Mills-ratio continued fraction
// R(x) = 1/(x + 1/(x + 2/(x + 3/(...)))) with Q(x) = phi(x) R(x).
inline double gaussian_tail_scaled(double x) {
    if (x <= 8.0)
        return std::exp(0.5 * x * x) * gaussian_tail_q(x);
    double r = 0.0;
    for (int k = 60; k >= 1; --k)
        r = static_cast<double>(k) / (x + r);
    r = 1.0 / (x + r);
    return r / std::sqrt(2.0 * M_PI);
}

} // namespace gridcell
