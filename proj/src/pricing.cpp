#include "searchmkt/pricing.hpp"

#include <cmath>
#include <cstddef>
#include <string>

#include "searchmkt/errors.hpp"
#include "searchmkt/hypergeom.hpp"

namespace searchmkt {

namespace {

double beta_raw(int N, const search_mix& mix, int n, double x) {
    if (mix.q >= 1.0) return gen({N, n, mix.k}, x);
    if (mix.q <= 0.0) return gen({N, n, mix.k + 1}, x);
    return mix.q * gen({N, n, mix.k}, x) + (1.0 - mix.q) * gen({N, n, mix.k + 1}, x);
}

double beta_prime_raw(int N, const search_mix& mix, int n, double x) {
    if (mix.q >= 1.0) return gen_prime({N, n, mix.k}, x);
    if (mix.q <= 0.0) return gen_prime({N, n, mix.k + 1}, x);
    return mix.q * gen_prime({N, n, mix.k}, x) +
           (1.0 - mix.q) * gen_prime({N, n, mix.k + 1}, x);
}

double beta_dd_raw(int N, const search_mix& mix, int n, double x) {
    if (mix.q >= 1.0) return gen_dd({N, n, mix.k}, x);
    if (mix.q <= 0.0) return gen_dd({N, n, mix.k + 1}, x);
    return mix.q * gen_dd({N, n, mix.k}, x) + (1.0 - mix.q) * gen_dd({N, n, mix.k + 1}, x);
}

void check_unit(double x) {
    if (!(x >= 0.0 && x <= 1.0))
        fail(errc::validation, "survival", "x must lie in [0, 1]");
}

}  // namespace

double beta(const market_config& cfg, const search_mix& mix, int n, double x) {
    validate_config(cfg);
    validate_mix(cfg, mix);
    check_unit(x);
    return beta_raw(cfg.N, mix, n, x);
}

double beta_prime(const market_config& cfg, const search_mix& mix, int n, double x) {
    validate_config(cfg);
    validate_mix(cfg, mix);
    check_unit(x);
    return beta_prime_raw(cfg.N, mix, n, x);
}

double beta_dd(const market_config& cfg, const search_mix& mix, int n, double x) {
    validate_config(cfg);
    validate_mix(cfg, mix);
    check_unit(x);
    return beta_dd_raw(cfg.N, mix, n, x);
}

double price_inverse(const price_law& law, double x) {
    check_unit(x);
    if (law.tag != law_tag::dispersed)
        fail(errc::internal, "degenerate-dispersion", "price_inverse needs a dispersed law");
    return law.b0 / beta_prime_raw(law.N, law.mix, law.n, x);
}

double price_inverse(const market_config& cfg, const search_mix& mix, int n, double x) {
    validate_config(cfg);
    validate_mix(cfg, mix);
    check_unit(x);
    const double b0 = beta_prime_raw(cfg.N, mix, n, 0.0);
    if (!(b0 > 0.0))
        fail(errc::internal, "degenerate-dispersion",
             "beta'(0) = 0 at n = " + std::to_string(n) + "; no captive buyers support dispersion");
    return cfg.v * b0 / beta_prime_raw(cfg.N, mix, n, x);
}

double price_cdf(const price_law& law, double p) {
    if (law.tag != law_tag::dispersed)
        fail(errc::internal, "degenerate-dispersion", "price_cdf needs a dispersed law");
    const double slack = 1e-9;
    if (p < law.p_low - slack || p > 1.0 + slack)
        fail(errc::internal, "out-of-support",
             "price " + std::to_string(p) + " outside [" + std::to_string(law.p_low) + ", 1]");
    if (p <= law.p_low) return 0.0;
    if (p >= 1.0) return 1.0;
    // price_inverse is strictly decreasing, so g(x) = p(x) - p brackets a
    // single root between 0 and 1.
    double lo = 0.0, hi = 1.0;
    double glo = 1.0 - p;
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double gm = price_inverse(law, mid) - p;
        if ((gm < 0.0) == (glo < 0.0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return 1.0 - 0.5 * (lo + hi);
}

std::vector<price_law> build_price_laws(const market_config& cfg, const search_mix& mix) {
    validate_config(cfg);
    validate_mix(cfg, mix);
    if (!oligopoly_possible(cfg))
        fail(errc::empty_result, "no-oligopoly",
             "theta_0 + theta_1 = 1 leaves no market where prices can compete");
    const int nl = n_lower(cfg);
    const int kmin = k_min(mix);
    if (kmin >= cfg.N - nl + 2)
        fail(errc::internal, "degenerate-dispersion",
             "every buyer compares at least two quotes in the n = " + std::to_string(nl) +
                 " market, so beta'(0) = 0 there");

    std::vector<price_law> laws(static_cast<std::size_t>(cfg.N) + 1);
    for (int n = 0; n <= cfg.N; ++n) {
        price_law& law = laws[static_cast<std::size_t>(n)];
        law.n = n;
        law.N = cfg.N;
        law.mix = mix;
        law.tag = law_tag::unreached;
    }
    laws[1].tag = law_tag::monopoly_atom;

    const bool single_quote = (mix.k == 1 && mix.q >= 1.0);
    for (int n = 2; n <= cfg.N; ++n) {
        price_law& law = laws[static_cast<std::size_t>(n)];
        if (n < nl) continue;  // zero probability by choice of n_low
        if (single_quote) {
            // nobody ever holds two quotes, so beta' is constant and the
            // "dispersed" law is the monopoly price in every market
            law.tag = law_tag::monopoly_atom;
            continue;
        }
        if (n <= cfg.N - kmin + 1) {
            law.tag = law_tag::dispersed;
            law.b0 = beta_prime_raw(cfg.N, mix, n, 0.0);
            if (!(law.b0 > 0.0))
                fail(errc::internal, "degenerate-dispersion",
                     "beta'(0) = 0 at n = " + std::to_string(n));
            law.p_low = law.b0 / beta_prime_raw(cfg.N, mix, n, 1.0);
            law.profit = law.b0 / n;
        } else {
            law.tag = law_tag::marginal_cost_atom;
        }
    }
    return laws;
}

}  // namespace searchmkt
