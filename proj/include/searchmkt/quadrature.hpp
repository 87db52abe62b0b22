#pragma once

#include <cstddef>
#include <vector>

namespace searchmkt {

struct quad_rule {
    std::vector<double> x;  // nodes on [0, 1]
    std::vector<double> w;
};

// Gauss-Legendre rule on [0, 1]; rules are generated once and cached.
const quad_rule& gauss_legendre(int npts);

template <class F>
double integrate01(F&& f, int npts = 64) {
    const quad_rule& r = gauss_legendre(npts);
    double acc = 0.0;
    for (std::size_t i = 0; i < r.x.size(); ++i) acc += r.w[i] * f(r.x[i]);
    return acc;
}

template <class F>
double integrate(F&& f, double a, double b, int npts = 64) {
    const quad_rule& r = gauss_legendre(npts);
    const double h = b - a;
    double acc = 0.0;
    for (std::size_t i = 0; i < r.x.size(); ++i) acc += r.w[i] * f(a + h * r.x[i]);
    return acc * h;
}

// Integrates f over [0, 1] on panels that refine geometrically toward 0,
// for integrands with a boundary layer there: [0, 1e-6, 1e-5, ..., 0.1, 1].
template <class F>
double integrate_layered(F&& f, int npts = 32) {
    double acc = 0.0;
    double lo = 0.0;
    for (double hi = 1e-6; hi < 0.2; hi *= 10.0) {
        acc += integrate(f, lo, hi, npts);
        lo = hi;
    }
    acc += integrate(f, lo, 1.0, npts);
    return acc;
}

}  // namespace searchmkt
