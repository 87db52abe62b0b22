#include "searchmkt/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace searchmkt {

namespace {

// Newton iteration on the Legendre polynomial, seeded with the Chebyshev
// approximation of the roots.
quad_rule make_rule(int n) {
    quad_rule r;
    r.x.resize(static_cast<std::size_t>(n));
    r.w.resize(static_cast<std::size_t>(n));
    const double eps = 1e-14;
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double z1 = 0.0, pp = 0.0;
        do {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            z1 = z;
            z = z1 - p1 / pp;
        } while (std::fabs(z - z1) > eps);
        // map the root from [-1, 1] to [0, 1]
        r.x[static_cast<std::size_t>(i)] = 0.5 * (1.0 - z);
        r.x[static_cast<std::size_t>(n - 1 - i)] = 0.5 * (1.0 + z);
        const double w = 1.0 / ((1.0 - z * z) * pp * pp);
        r.w[static_cast<std::size_t>(i)] = w;
        r.w[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    return r;
}

}  // namespace

const quad_rule& gauss_legendre(int npts) {
    static std::mutex mu;
    static std::map<int, quad_rule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(npts);
    if (it == cache.end()) it = cache.emplace(npts, make_rule(npts)).first;
    return it->second;
}

}  // namespace searchmkt
