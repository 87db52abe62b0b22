#pragma once

#include <cmath>
#include <utility>

namespace searchmkt {

// Bisection for f = 0 on [lo, hi]; flo and fhi are f at the ends and must
// have opposite signs.
template <class F>
double bisect(F&& f, double lo, double hi, double flo, double xtol = 1e-12,
              int maxit = 200) {
    for (int it = 0; it < maxit && hi - lo > xtol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Golden-section maximizer for a unimodal f; returns {argmax, f(argmax)}.
template <class F>
std::pair<double, double> golden_max(F&& f, double lo, double hi,
                                     double xtol = 1e-10) {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - phi * (b - a);
    double x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > xtol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        }
    }
    const double xm = 0.5 * (a + b);
    return {xm, f(xm)};
}

}  // namespace searchmkt
