#include "searchmkt/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include "searchmkt/errors.hpp"
#include "searchmkt/hypergeom.hpp"
#include "searchmkt/quadrature.hpp"
#include "searchmkt/rootfind.hpp"

namespace searchmkt {

namespace {

constexpr double q_clamp = 1e-6;  // bracketing clamp near the ends of [0, 1]

double theta(const market_config& cfg, int n) {
    return cfg.theta[static_cast<std::size_t>(n)];
}

// d benefit / d q by central differences.
double benefit_slope(const market_config& cfg, int k, double q) {
    const double h = 1e-6;
    const double lo = std::max(0.0, q - h);
    const double hi = std::min(1.0, q + h);
    return (benefit(cfg, k, hi) - benefit(cfg, k, lo)) / (hi - lo);
}

void check_mix_k(const market_config& cfg, int k) {
    const int nl = n_lower(cfg);
    if (k < 1 || k > cfg.N - nl + 1)
        fail(errc::validation, "mix-depth",
             "k must lie in [1, N - n_low + 1] = [1, " + std::to_string(cfg.N - nl + 1) + "]");
}

double pure_participation(const market_config& cfg, const equilibrium& eq) {
    return cfg.v - virtual_price(cfg, eq.laws, eq.k) - (eq.k - 1) * cfg.c;
}

bool eq_order(const equilibrium& a, const equilibrium& b) {
    if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
    if (a.k != b.k) return a.k < b.k;
    return a.q < b.q;
}

}  // namespace

double virtual_price(const market_config& cfg, const std::vector<price_law>& laws, int j) {
    validate_config(cfg);
    if (j < 1 || j > cfg.N)
        fail(errc::validation, "search-depth", "j must lie in [1, N]");
    if (laws.size() != static_cast<std::size_t>(cfg.N) + 1)
        fail(errc::internal, "invalid-equilibrium", "price law table has the wrong size");
    double acc = cfg.theta[0] + cfg.theta[1];  // nothing to buy, or a monopolist at v
    for (int n = 2; n <= cfg.N; ++n) {
        const double th = theta(cfg, n);
        if (th == 0.0) continue;
        const price_law& law = laws[static_cast<std::size_t>(n)];
        const sample_frame fj{cfg.N, n, j};
        switch (law.tag) {
            case law_tag::monopoly_atom:
                acc += th;  // pays v when found, counted at v when missed
                break;
            case law_tag::marginal_cost_atom:
                acc += th * pmf(fj, 0);
                break;
            case law_tag::dispersed: {
                const double miss = pmf(fj, 0);
                const double paid = integrate01(
                    [&](double x) { return price_inverse(law, x) * gen_prime(fj, x); });
                acc += th * (miss + paid);
                break;
            }
            case law_tag::unreached:
                fail(errc::internal, "invalid-equilibrium",
                     "market n = " + std::to_string(n) + " is reachable but has no price law");
        }
    }
    return cfg.v * acc;
}

double benefit(const market_config& cfg, int k, double q) {
    validate_config(cfg);
    check_mix_k(cfg, k);
    if (q < 0.0 || q > 1.0) fail(errc::validation, "mix-weight", "q must lie in [0, 1]");
    const int nl = n_lower(cfg);
    if (q == 0.0 && k == cfg.N - nl + 1) return 0.0;  // continuous limit of q log(1/q)
    const search_mix mix{k, q};
    const auto laws = build_price_laws(cfg, mix);
    double acc = 0.0;
    for (int n = nl; n <= cfg.N; ++n) {
        const double th = theta(cfg, n);
        const price_law& law = laws[static_cast<std::size_t>(n)];
        if (th == 0.0 || law.tag != law_tag::dispersed) continue;  // atoms cancel
        const sample_frame fk{cfg.N, n, k};
        const sample_frame fk1{cfg.N, n, k + 1};
        const double miss_gap = pmf(fk, 0) - pmf(fk1, 0);
        const double paid_gap = integrate01([&](double x) {
            return price_inverse(law, x) * (gen_prime(fk, x) - gen_prime(fk1, x));
        });
        acc += th * (miss_gap + paid_gap);
    }
    return cfg.v * acc;
}

double benefit_ibp(const market_config& cfg, int k, double q) {
    validate_config(cfg);
    check_mix_k(cfg, k);
    const int nl = n_lower(cfg);
    if (q == 0.0 && k == cfg.N - nl + 1) return 0.0;
    const search_mix mix{k, q};
    const auto laws = build_price_laws(cfg, mix);
    double acc = 0.0;
    for (int n = nl; n <= cfg.N; ++n) {
        const double th = theta(cfg, n);
        const price_law& law = laws[static_cast<std::size_t>(n)];
        if (th == 0.0 || law.tag != law_tag::dispersed) continue;
        const sample_frame fk{cfg.N, n, k};
        const sample_frame fk1{cfg.N, n, k + 1};
        acc += th * integrate01([&](double x) {
            const double bp = beta_prime(cfg, mix, n, x);
            const double dp = -law.b0 * beta_dd(cfg, mix, n, x) / (bp * bp);
            return -dp * (gen(fk, x) - gen(fk1, x));
        });
    }
    return cfg.v * acc;
}

std::vector<mixed_root> solve_mixed(const market_config& cfg, int k, double c) {
    validate_config(cfg);
    check_mix_k(cfg, k);
    if (!(c > 0.0)) fail(errc::validation, "search-cost", "c must be positive");
    auto b = [&](double q) { return benefit(cfg, k, q); };
    const auto [q_pk, peak] = golden_max(b, q_clamp, 1.0 - q_clamp);
    std::vector<mixed_root> roots;
    if (peak < c) return roots;

    // rising branch
    double lo = q_clamp;
    double blo = b(lo);
    if (blo >= c) {
        lo = 0.0;
        blo = b(lo);
    }
    const double residual_cap = 1e-8 * cfg.v;
    if (blo < c) {
        const double r =
            bisect([&](double q) { return b(q) - c; }, lo, q_pk, blo - c);
        if (std::fabs(b(r) - c) <= residual_cap)
            roots.push_back({r, benefit_slope(cfg, k, r) > 0.0});
    }

    // falling branch
    double hi = 1.0 - q_clamp;
    double bhi = b(hi);
    if (bhi >= c) {
        hi = 1.0;
        bhi = b(hi);
    }
    if (bhi < c) {
        const double r =
            bisect([&](double q) { return c - b(q); }, q_pk, hi, c - peak);
        if (std::fabs(b(r) - c) <= residual_cap)
            roots.push_back({r, benefit_slope(cfg, k, r) > 0.0});
    }
    std::sort(roots.begin(), roots.end(),
              [](const mixed_root& a, const mixed_root& b2) { return a.q < b2.q; });
    return roots;
}

std::array<double, 2> pure_interval(const market_config& cfg, int k) {
    validate_config(cfg);
    const int nl = n_lower(cfg);
    if (k < 2 || k > cfg.N - nl + 1)
        fail(errc::validation, "mix-depth", "pure cutoffs need k in [2, N - n_low + 1]");
    const auto laws = build_price_laws(cfg, {k, 1.0});
    const double pk = virtual_price(cfg, laws, k);
    const double pk1 = virtual_price(cfg, laws, k + 1);
    const double pkm = virtual_price(cfg, laws, k - 1);
    return {pk - pk1, pkm - pk};
}

branch_range mixed_cost_range(const market_config& cfg, int k) {
    validate_config(cfg);
    check_mix_k(cfg, k);
    auto b = [&](double q) { return benefit(cfg, k, q); };
    const auto [q_pk, peak] = golden_max(b, q_clamp, 1.0 - q_clamp);
    const double b0 = benefit(cfg, k, 0.0);
    const double b1 = benefit(cfg, k, 1.0);
    return {std::min(b0, b1), peak, q_pk};
}

std::vector<cutoff_row> cutoff_table(const market_config& cfg) {
    validate_config(cfg);
    const int nl = n_lower(cfg);
    std::vector<cutoff_row> rows;
    for (int k = 1; k <= cfg.N - nl + 1; ++k) {
        cutoff_row row;
        row.k = k;
        row.mixed = mixed_cost_range(cfg, k);
        if (k >= 2) {
            const auto iv = pure_interval(cfg, k);
            row.has_pure = true;
            row.pure_lo = iv[0];
            row.pure_hi = iv[1];
        }
        rows.push_back(row);
    }
    return rows;
}

equilibrium diamond_equilibrium(const market_config& cfg) {
    validate_config(cfg);
    equilibrium eq;
    eq.kind = eq_kind::diamond;
    eq.k = 1;
    eq.q = 1.0;
    eq.laws.resize(static_cast<std::size_t>(cfg.N) + 1);
    for (int n = 0; n <= cfg.N; ++n) {
        price_law& law = eq.laws[static_cast<std::size_t>(n)];
        law.n = n;
        law.N = cfg.N;
        law.mix = {1, 1.0};
        law.tag = n >= 1 ? law_tag::monopoly_atom : law_tag::unreached;
    }
    eq.stable = true;
    eq.note = "stable against perturbations of search intensity only";
    eq.indiff_residual = 0.0;
    eq.participation_slack = 0.0;  // buyers pay exactly v and search once for free
    return eq;
}

std::vector<equilibrium> enumerate_equilibria(const market_config& cfg) {
    validate_config(cfg);
    std::vector<equilibrium> out;
    out.push_back(diamond_equilibrium(cfg));
    if (!oligopoly_possible(cfg)) return out;

    const int nl = n_lower(cfg);
    const int ktop = cfg.N - nl + 1;
    const double edge_tol = 1e-12 * cfg.v;

    for (int k = 2; k <= ktop; ++k) {
        const auto iv = pure_interval(cfg, k);
        if (cfg.c < iv[0] - edge_tol || cfg.c > iv[1] + edge_tol) continue;
        equilibrium eq;
        eq.kind = eq_kind::pure_search;
        eq.k = k;
        eq.q = 1.0;
        eq.laws = build_price_laws(cfg, {k, 1.0});
        eq.marginal =
            std::fabs(cfg.c - iv[0]) <= edge_tol || std::fabs(cfg.c - iv[1]) <= edge_tol;
        eq.stable = !eq.marginal;
        eq.indiff_residual = 0.0;
        eq.participation_slack = pure_participation(cfg, eq);
        out.push_back(eq);
    }

    for (int k = 1; k <= ktop; ++k) {
        for (const mixed_root& r : solve_mixed(cfg, k, cfg.c)) {
            equilibrium eq;
            eq.kind = eq_kind::mixed_search;
            eq.k = k;
            eq.q = r.q;
            eq.laws = build_price_laws(cfg, {k, r.q});
            eq.stable = r.stable;
            eq.indiff_residual = std::fabs(benefit(cfg, k, r.q) - cfg.c);
            const double pbar = r.q * virtual_price(cfg, eq.laws, k) +
                                (1.0 - r.q) * virtual_price(cfg, eq.laws, k + 1);
            eq.participation_slack = cfg.v - pbar - (k - r.q) * cfg.c;
            out.push_back(eq);
        }
    }
    std::sort(out.begin(), out.end(), eq_order);
    return out;
}

equilibrium stable_small_c(const market_config& cfg) {
    validate_config(cfg);
    const int nl = n_lower(cfg);  // raises no-oligopoly first
    const int ktop = cfg.N - nl + 1;
    const branch_range range = mixed_cost_range(cfg, ktop);

    const auto roots = solve_mixed(cfg, ktop, cfg.c);
    const mixed_root* rising = nullptr;
    for (const auto& r : roots)
        if (r.stable) rising = &r;
    if (rising == nullptr)
        fail(errc::empty_result, "cost-too-large",
             "no stable mixed equilibrium at k = " + std::to_string(ktop) +
                 "; the branch supports costs up to " + std::to_string(range.c_hi));

    equilibrium eq;
    eq.kind = eq_kind::mixed_search;
    eq.k = ktop;
    eq.q = rising->q;
    eq.laws = build_price_laws(cfg, {ktop, rising->q});
    eq.stable = true;
    eq.indiff_residual = std::fabs(benefit(cfg, ktop, rising->q) - cfg.c);
    const double pbar = rising->q * virtual_price(cfg, eq.laws, ktop) +
                        (1.0 - rising->q) * virtual_price(cfg, eq.laws, ktop + 1);
    eq.participation_slack = cfg.v - pbar - (ktop - rising->q) * cfg.c;

    // Below this bound the rising root is provably the only stable
    // equilibrium with active search; verify that while we are there.
    double small_bound = range.c_hi;
    if (ktop >= 2)
        small_bound = std::min(pure_interval(cfg, 2)[0], pure_interval(cfg, ktop)[0]);
    if (cfg.c < small_bound) {
        int stable_active = 0;
        for (const auto& other : enumerate_equilibria(cfg))
            if (other.kind != eq_kind::diamond && other.stable) ++stable_active;
        if (stable_active != 1)
            fail(errc::internal, "invalid-equilibrium",
                 "expected exactly one stable active-search equilibrium below the "
                 "small-cost bound, found " + std::to_string(stable_active));
    } else {
        eq.note = "search cost exceeds the small-cost uniqueness bound " +
                  std::to_string(small_bound) + "; other stable equilibria may coexist";
    }
    return eq;
}

}  // namespace searchmkt
