#include "searchmkt/extensions.hpp"

#include <cmath>
#include <cstddef>
#include <string>

#include "searchmkt/errors.hpp"
#include "searchmkt/hypergeom.hpp"
#include "searchmkt/quadrature.hpp"
#include "searchmkt/rootfind.hpp"

namespace searchmkt {

namespace {

constexpr double q_clamp = 1e-6;

double delta_at(const noisy_tech& tech, int l, int k) {
    return tech.delta[static_cast<std::size_t>(l)][static_cast<std::size_t>(k)];
}

void check_tech_shape(const market_config& cfg, const noisy_tech& tech) {
    if (tech.N != cfg.N)
        fail(errc::validation, "tech-shape", "technology matrix is sized for a different N");
    if (tech.delta.size() != static_cast<std::size_t>(cfg.N) + 1)
        fail(errc::validation, "tech-shape", "delta must have N rows (1-based)");
    for (int l = 1; l <= cfg.N; ++l)
        if (tech.delta[static_cast<std::size_t>(l)].size() != static_cast<std::size_t>(cfg.N) + 1)
            fail(errc::validation, "tech-shape", "delta rows must have N columns (1-based)");
}

// weight on sample size k under the l / l+1 technology mix
double tech_weight(const noisy_tech& tech, int l, double q, int k) {
    return q * delta_at(tech, l, k) + (1.0 - q) * delta_at(tech, l + 1, k);
}

double noisy_d(const market_config& cfg, const noisy_tech& tech, int nl, int l, double q,
               double x) {
    double acc = 0.0;
    for (int k = l; k <= cfg.N; ++k) {
        const double w = tech_weight(tech, l, q, k);
        if (w == 0.0) continue;
        acc += w * gen_prime({cfg.N, nl, k}, x);
    }
    return acc;
}

double noisy_slope(const market_config& cfg, const noisy_tech& tech, double q) {
    const double h = 1e-6;
    const double lo = std::max(0.0, q - h);
    const double hi = std::min(1.0, q + h);
    return (noisy_benefit(cfg, tech, hi) - noisy_benefit(cfg, tech, lo)) / (hi - lo);
}

void check_het(const market_config& cfg, double lambda) {
    validate_config(cfg);
    if (!(lambda > 0.0 && lambda < 1.0))
        fail(errc::validation, "shopper-share", "lambda must lie in (0, 1)");
    if (n_lower(cfg) != 2)
        fail(errc::validation, "het-duopoly",
             "the heterogeneity extension needs theta_2 > 0 (duopoly pricing)");
}

market_config shifted_theta(const market_config& base, int to, int from, double s) {
    market_config cfg = base;
    cfg.theta[static_cast<std::size_t>(from)] -= s;
    cfg.theta[static_cast<std::size_t>(to)] += s;
    if (cfg.theta[static_cast<std::size_t>(from)] < 0.0) {
        if (cfg.theta[static_cast<std::size_t>(from)] > -1e-12)
            cfg.theta[static_cast<std::size_t>(from)] = 0.0;
        else
            fail(errc::validation, "invalid-shift",
                 "shift " + std::to_string(s) + " drives theta_" + std::to_string(from) +
                     " negative");
    }
    return cfg;
}

}  // namespace

std::vector<std::string> validate_tech(const market_config& cfg, const noisy_tech& tech) {
    validate_config(cfg);
    check_tech_shape(cfg, tech);
    std::vector<std::string> bad;
    for (int l = 1; l <= cfg.N; ++l) {
        double sum = 0.0;
        for (int k = 0; k <= cfg.N; ++k) {
            const double d = delta_at(tech, l, k);
            if (d < 0.0)
                bad.push_back("row " + std::to_string(l) + ": negative mass at k = " +
                              std::to_string(k));
            if (k < l && d != 0.0)
                bad.push_back("row " + std::to_string(l) + ": mass below the row index at k = " +
                              std::to_string(k));
            sum += d;
        }
        if (std::fabs(sum - 1.0) > 1e-12)
            bad.push_back("row " + std::to_string(l) + ": mass sums to " + std::to_string(sum));
    }
    for (int l = 1; l < cfg.N; ++l) {
        double sl = 0.0, sl1 = 0.0;
        for (int m = 1; m <= cfg.N; ++m) {
            sl += delta_at(tech, l, m);
            sl1 += delta_at(tech, l + 1, m);
            if (sl < sl1 - 1e-12)
                bad.push_back("rows " + std::to_string(l) + "/" + std::to_string(l + 1) +
                              ": cumulative dominance fails at k <= " + std::to_string(m));
        }
    }
    // Strict convexity of the rows against every observation pgf, on the
    // interior of the 21-point grid: at x = 1 the pgfs all equal one and at
    // x = 0 with n = N they all vanish, so the form is exactly zero there
    // for every admissible matrix and the endpoints cannot discriminate.
    for (int l = 2; l < cfg.N; ++l) {
        for (int n = 2; n <= cfg.N; ++n) {
            for (int i = 1; i <= 19; ++i) {
                const double x = 0.05 * i;
                double conv = 0.0;
                for (int k = 1; k <= cfg.N; ++k) {
                    const double w = delta_at(tech, l - 1, k) + delta_at(tech, l + 1, k) -
                                     2.0 * delta_at(tech, l, k);
                    if (w != 0.0) conv += w * gen({cfg.N, n, k}, x);
                }
                if (conv <= 1e-12) {
                    bad.push_back("rows " + std::to_string(l - 1) + ".." + std::to_string(l + 1) +
                                  ": convexity fails against n = " + std::to_string(n) +
                                  " at x = " + std::to_string(x));
                    break;  // one grid point per (l, n) is enough to report
                }
            }
        }
    }
    return bad;
}

double noisy_price(const market_config& cfg, const noisy_tech& tech, double q, double x) {
    validate_config(cfg);
    check_tech_shape(cfg, tech);
    if (!(q > 0.0) || q > 1.0)
        fail(errc::internal, "degenerate-dispersion",
             "the captive mass vanishes at q = 0; price needs q in (0, 1]");
    const int nl = n_lower(cfg);
    const int l = cfg.N - nl + 1;
    const double num = q * delta_at(tech, l, l) * pmf({cfg.N, nl, l}, 1);
    return num / noisy_d(cfg, tech, nl, l, q, x);
}

double noisy_benefit(const market_config& cfg, const noisy_tech& tech, double q) {
    validate_config(cfg);
    check_tech_shape(cfg, tech);
    if (q < 0.0 || q > 1.0) fail(errc::validation, "mix-weight", "q must lie in [0, 1]");
    if (q == 0.0) return 0.0;  // continuous limit of q log(1/q)
    const int nl = n_lower(cfg);
    const int l = cfg.N - nl + 1;
    const double num = q * delta_at(tech, l, l) * pmf({cfg.N, nl, l}, 1);
    double acc = 0.0;
    for (int k = l; k <= cfg.N; ++k) {
        const double w = delta_at(tech, l, k) - delta_at(tech, l + 1, k);
        if (w == 0.0) continue;
        const sample_frame fk{cfg.N, nl, k};
        // the integrand has a boundary layer of width ~q at x = 0
        acc += w * integrate_layered([&](double x) {
            return num / noisy_d(cfg, tech, nl, l, q, x) * gen_prime(fk, x);
        });
    }
    return cfg.v * cfg.theta[static_cast<std::size_t>(nl)] * acc;
}

std::vector<noisy_root> noisy_solve(const market_config& cfg, const noisy_tech& tech) {
    validate_config(cfg);
    check_tech_shape(cfg, tech);
    const double c = cfg.c;
    auto b = [&](double q) { return noisy_benefit(cfg, tech, q); };
    const auto [q_pk, peak] = golden_max(b, q_clamp, 1.0 - q_clamp);
    std::vector<noisy_root> roots;
    if (peak < c) return roots;
    const double residual_cap = 1e-8 * cfg.v;

    double lo = q_clamp, blo = b(lo);
    if (blo >= c) {
        lo = 0.0;
        blo = 0.0;
    }
    if (blo < c) {
        const double r = bisect([&](double q) { return b(q) - c; }, lo, q_pk, blo - c);
        if (std::fabs(b(r) - c) <= residual_cap)
            roots.push_back({r, noisy_slope(cfg, tech, r) > 0.0});
    }
    double hi = 1.0 - q_clamp, bhi = b(hi);
    if (bhi >= c) {
        hi = 1.0;
        bhi = b(hi);
    }
    if (bhi < c) {
        const double r = bisect([&](double q) { return c - b(q); }, q_pk, hi, c - peak);
        if (std::fabs(b(r) - c) <= residual_cap)
            roots.push_back({r, noisy_slope(cfg, tech, r) > 0.0});
    }
    return roots;
}

noisy_report noisy_outcomes(const market_config& cfg, const noisy_tech& tech, double q) {
    validate_config(cfg);
    check_tech_shape(cfg, tech);
    const int nl = n_lower(cfg);
    const int l = cfg.N - nl + 1;
    noisy_report rep;
    rep.q = q;
    rep.tech_cost = (q * (l - 1) + (1.0 - q) * l) * cfg.c;

    double monopoly_miss = 0.0;
    for (int k = 1; k <= cfg.N; ++k)
        monopoly_miss += tech_weight(tech, l, q, k) * (cfg.N - k) / cfg.N;
    rep.purchase_prob = 1.0 - cfg.theta[0] - cfg.theta[1] * monopoly_miss;

    double paid = 0.0;  // dispersed payments at n_low, fraction of v
    if (q > 0.0) {
        for (int k = l; k <= cfg.N; ++k) {
            const double w = tech_weight(tech, l, q, k);
            if (w == 0.0) continue;
            const sample_frame fk{cfg.N, nl, k};
            paid += w * integrate_layered(
                            [&](double x) { return noisy_price(cfg, tech, q, x) * gen_prime(fk, x); });
        }
    }
    const double pbar =
        cfg.v * (cfg.theta[0] + cfg.theta[1] + cfg.theta[static_cast<std::size_t>(nl)] * paid);
    rep.price_paid = rep.purchase_prob > 0.0
                         ? (pbar - cfg.v * (1.0 - rep.purchase_prob)) / rep.purchase_prob
                         : 0.0;
    rep.surplus = cfg.v - pbar - rep.tech_cost;
    return rep;
}

std::vector<noisy_sweep_point> noisy_sweep_theta(const market_config& cfg,
                                                 const noisy_tech& tech, int to, int from,
                                                 double shift, int points) {
    validate_config(cfg);
    if (from < 0 || to > cfg.N || to <= from)
        fail(errc::validation, "invalid-shift",
             "mass must move up the seller count: need 0 <= from < to <= N");
    if (points < 2) fail(errc::validation, "invalid-shift", "need at least 2 grid points");
    std::vector<noisy_sweep_point> rows;
    for (int i = 0; i < points; ++i) {
        const double s = shift * i / (points - 1);
        const market_config cfg_s = shifted_theta(cfg, to, from, s);
        validate_config(cfg_s);
        noisy_sweep_point pt;
        pt.shift = s;
        pt.theta_from = cfg_s.theta[static_cast<std::size_t>(from)];
        pt.theta_to = cfg_s.theta[static_cast<std::size_t>(to)];
        for (const noisy_root& r : noisy_solve(cfg_s, tech)) {
            if (!r.stable) continue;
            pt.exists = true;
            pt.rep = noisy_outcomes(cfg_s, tech, r.q);
        }
        rows.push_back(pt);
    }
    return rows;
}

// ---------------------------------------------------------------------------

double het_mu(double q, double lambda, int N) {
    if (q < 0.0 || q > 1.0) fail(errc::validation, "mix-weight", "q must lie in [0, 1]");
    if (!(lambda > 0.0 && lambda < 1.0))
        fail(errc::validation, "shopper-share", "lambda must lie in (0, 1)");
    return q * (1.0 - lambda) / (N - 2.0 * q * (1.0 - lambda));
}

het_law het_duopoly_law(const market_config& cfg, double lambda, double q) {
    check_het(cfg, lambda);
    if (!(q > 0.0))
        fail(errc::internal, "degenerate-dispersion",
             "no captive buyers at q = 0; the duopoly law collapses to marginal cost");
    het_law law;
    law.mu = het_mu(q, lambda, cfg.N);
    law.v = cfg.v;
    law.p_low = law.mu / (1.0 + law.mu) * cfg.v;
    return law;
}

double het_expected_price(const het_law& law) {
    const double mu = law.mu;
    if (mu <= 0.0) return 0.0;
    return law.p_low + law.v * mu * (std::log1p(1.0 / mu) - 1.0 / (1.0 + mu));
}

double het_expected_min(const het_law& law) {
    const double mu = law.mu;
    if (mu <= 0.0) return 0.0;
    return law.p_low +
           law.v * mu * (1.0 - 2.0 * mu * std::log1p(1.0 / mu) + mu / (1.0 + mu));
}

double het_gap(double mu, double v) {
    if (mu <= 0.0) return 0.0;
    return v * mu * ((1.0 + 2.0 * mu) * std::log1p(1.0 / mu) - 2.0);
}

double het_benefit(const market_config& cfg, double lambda, double q) {
    check_het(cfg, lambda);
    if (q < 0.0 || q > 1.0) fail(errc::validation, "mix-weight", "q must lie in [0, 1]");
    if (q == 0.0) return 0.0;
    return cfg.theta[2] * (2.0 / cfg.N) * het_gap(het_mu(q, lambda, cfg.N), cfg.v);
}

double het_m(double mu) {
    return std::log1p(1.0 / mu) - (3.0 + 4.0 * mu) / ((1.0 + mu) * (1.0 + 4.0 * mu));
}

std::vector<het_root> het_solve(const market_config& cfg, double lambda) {
    check_het(cfg, lambda);
    const double c = cfg.c;
    auto b = [&](double q) { return het_benefit(cfg, lambda, q); };

    // The benefit peaks where M(mu) = 0; M falls from +inf on (0, 1/2) and
    // stays negative beyond, so the root is unique.
    const double mu_star = bisect(het_m, 1e-9, 0.5, het_m(1e-9));
    const double mu_one = het_mu(1.0, lambda, cfg.N);
    double q_pk = 1.0;
    if (mu_one > mu_star)
        q_pk = mu_star * cfg.N / ((1.0 - lambda) * (1.0 + 2.0 * mu_star));
    const double peak = b(q_pk);

    std::vector<het_root> roots;
    if (peak < c) return roots;
    const double residual_cap = 1e-8 * cfg.v;
    if (c > 0.0) {
        const double r = bisect([&](double q) { return b(q) - c; }, 0.0, q_pk, -c);
        if (std::fabs(b(r) - c) <= residual_cap)
            roots.push_back({r, het_mu(r, lambda, cfg.N), het_m(het_mu(r, lambda, cfg.N)) > 0.0});
    }
    if (q_pk < 1.0 && b(1.0) < c) {
        const double r = bisect([&](double q) { return c - b(q); }, q_pk, 1.0, c - peak);
        if (std::fabs(b(r) - c) <= residual_cap)
            roots.push_back({r, het_mu(r, lambda, cfg.N), het_m(het_mu(r, lambda, cfg.N)) > 0.0});
    }
    return roots;
}

het_report het_outcomes(const market_config& cfg, double lambda, double q) {
    check_het(cfg, lambda);
    het_report rep;
    rep.q = q;
    rep.mu = het_mu(q, lambda, cfg.N);
    double ep = 0.0, emin = 0.0;
    if (q > 0.0) {
        const het_law law = het_duopoly_law(cfg, lambda, q);
        ep = het_expected_price(law);
        emin = het_expected_min(law);
    }
    const double th2 = cfg.theta[2];
    rep.purchase_prob = 1.0 - cfg.theta[0] - cfg.theta[1] * q / cfg.N;
    // sampling N-1 firms misses one seller of two with probability 2/N
    const double duo_paid =
        q * ((2.0 / cfg.N) * ep + (1.0 - 2.0 / cfg.N) * emin) + (1.0 - q) * emin;
    const double pbar = (cfg.theta[0] + cfg.theta[1]) * cfg.v + th2 * duo_paid;
    rep.price_paid = rep.purchase_prob > 0.0
                         ? (pbar - cfg.v * (1.0 - rep.purchase_prob)) / rep.purchase_prob
                         : 0.0;
    rep.surplus = cfg.v - pbar - (cfg.N - 1.0 - q) * cfg.c;
    return rep;
}

std::vector<het_sweep_point> het_sweep_theta(const market_config& cfg, double lambda,
                                             int to, double shift, int points) {
    check_het(cfg, lambda);
    if (to < 3 || to > cfg.N)
        fail(errc::validation, "invalid-shift", "mass must move from theta_2 to some theta_i, i >= 3");
    if (points < 2) fail(errc::validation, "invalid-shift", "need at least 2 grid points");
    std::vector<het_sweep_point> rows;
    for (int i = 0; i < points; ++i) {
        const double s = shift * i / (points - 1);
        const market_config cfg_s = shifted_theta(cfg, to, 2, s);
        validate_config(cfg_s);
        het_sweep_point pt;
        pt.shift = s;
        pt.theta2 = cfg_s.theta[2];
        pt.theta_to = cfg_s.theta[static_cast<std::size_t>(to)];
        for (const het_root& r : het_solve(cfg_s, lambda)) {
            if (!r.stable) continue;
            pt.exists = true;
            pt.rep = het_outcomes(cfg_s, lambda, r.q);
        }
        rows.push_back(pt);
    }
    return rows;
}

}  // namespace searchmkt
