#include "searchmkt/market.hpp"

#include <cmath>
#include <cstddef>
#include <string>

#include "searchmkt/errors.hpp"
#include "searchmkt/hypergeom.hpp"

namespace searchmkt {

void validate_config(const market_config& cfg) {
    if (cfg.N < 3 || cfg.N > max_firms)
        fail(errc::validation, "firm-count", "N must lie in [3, 64], got " + std::to_string(cfg.N));
    if (!(cfg.v > 0.0)) fail(errc::validation, "valuation", "v must be positive");
    if (!(cfg.c > 0.0)) fail(errc::validation, "search-cost", "c must be positive");
    if (cfg.theta.size() != static_cast<std::size_t>(cfg.N) + 1)
        fail(errc::validation, "theta-size",
             "theta must have N + 1 entries, got " + std::to_string(cfg.theta.size()));
    double sum = 0.0;
    for (double t : cfg.theta) {
        if (!(t >= 0.0)) fail(errc::validation, "theta-negative", "theta entries must be nonnegative");
        sum += t;
    }
    if (std::fabs(sum - 1.0) > 1e-12)
        fail(errc::validation, "theta-sum",
             "theta entries must sum to 1 within 1e-12, got " + std::to_string(sum));
}

bool oligopoly_possible(const market_config& cfg) {
    return cfg.theta[0] + cfg.theta[1] < 1.0 - 1e-15;
}

int n_lower(const market_config& cfg) {
    for (int n = 2; n <= cfg.N; ++n)
        if (cfg.theta[static_cast<std::size_t>(n)] > 0.0) return n;
    fail(errc::empty_result, "no-oligopoly",
         "theta_0 + theta_1 = 1 leaves no market where prices can compete");
}

void validate_mix(const market_config& cfg, const search_mix& mix) {
    if (mix.q < 0.0 || mix.q > 1.0)
        fail(errc::validation, "mix-weight", "q must lie in [0, 1]");
    if (mix.k < 1 || mix.k > cfg.N)
        fail(errc::validation, "mix-depth", "k must lie in [1, N]");
    if (mix.q < 1.0 && mix.k + 1 > cfg.N)
        fail(errc::validation, "mix-depth", "k + 1 exceeds the number of firms");
    if (oligopoly_possible(cfg)) {
        const int ktop = cfg.N - n_lower(cfg) + 1;
        if (mix.k > ktop)
            fail(errc::validation, "mix-depth",
                 "k must not exceed N - n_low + 1 = " + std::to_string(ktop));
    }
}

int k_min(const search_mix& mix) { return mix.q > 0.0 ? mix.k : mix.k + 1; }

}  // namespace searchmkt
