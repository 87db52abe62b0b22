#include "searchmkt/outcomes.hpp"

#include <cmath>
#include <cstddef>
#include <string>

#include "searchmkt/errors.hpp"
#include "searchmkt/hypergeom.hpp"

namespace searchmkt {

namespace {

double miss_prob(const market_config& cfg, int k, double q) {
    double acc = cfg.theta[0];
    for (int n = 1; n <= cfg.N; ++n) {
        const double th = cfg.theta[static_cast<std::size_t>(n)];
        if (th == 0.0) continue;
        double m = pmf({cfg.N, n, k}, 0);
        if (q < 1.0) m = q * m + (1.0 - q) * pmf({cfg.N, n, k + 1}, 0);
        acc += th * m;
    }
    return acc;
}

struct branch_state {
    bool mixed_exists = false;
    double mixed_q = 0.0;
    outcome_report mixed;
    bool pure_exists = false;
    int k = 0;
    outcome_report pure;
};

branch_state stable_branches(const market_config& cfg) {
    branch_state st;
    if (!oligopoly_possible(cfg)) return st;
    const int ktop = cfg.N - n_lower(cfg) + 1;
    st.k = ktop;
    for (const mixed_root& r : solve_mixed(cfg, ktop, cfg.c)) {
        if (!r.stable) continue;
        equilibrium eq;
        eq.kind = eq_kind::mixed_search;
        eq.k = ktop;
        eq.q = r.q;
        eq.laws = build_price_laws(cfg, {ktop, r.q});
        st.mixed_exists = true;
        st.mixed_q = r.q;
        st.mixed = report(cfg, eq);
    }
    if (ktop >= 2) {
        const auto iv = pure_interval(cfg, ktop);
        if (cfg.c > iv[0] && cfg.c < iv[1]) {
            equilibrium eq;
            eq.kind = eq_kind::pure_search;
            eq.k = ktop;
            eq.q = 1.0;
            eq.laws = build_price_laws(cfg, {ktop, 1.0});
            st.pure_exists = true;
            st.pure = report(cfg, eq);
        }
    }
    return st;
}

market_config shifted(const market_config& base, int to, int from, double s) {
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

outcome_report report(const market_config& cfg, const equilibrium& eq) {
    validate_config(cfg);
    outcome_report r;
    const int k = eq.k;
    const double q = eq.kind == eq_kind::mixed_search ? eq.q : 1.0;
    r.searches = eq.kind == eq_kind::mixed_search ? (k + 1 - q) : static_cast<double>(k);
    r.expenditure = (r.searches - 1.0) * cfg.c;
    double pbar = virtual_price(cfg, eq.laws, k);
    if (eq.kind == eq_kind::mixed_search)
        pbar = q * pbar + (1.0 - q) * virtual_price(cfg, eq.laws, k + 1);
    r.avg_virtual_price = pbar;
    r.purchase_prob = 1.0 - miss_prob(cfg, k, eq.kind == eq_kind::mixed_search ? q : 1.0);
    r.price_paid = r.purchase_prob > 0.0
                       ? (pbar - cfg.v * (1.0 - r.purchase_prob)) / r.purchase_prob
                       : 0.0;
    r.surplus = cfg.v - pbar - r.expenditure;
    return r;
}

double conditional_price_fraction(int N, int k, int n) {
    const sample_frame f{N, n, k};
    validate_frame(f);
    if (n < 1) fail(errc::validation, "frame", "n must be at least 1");
    if (n >= N - k + 2) return 0.0;
    return pmf(f, 1) / (1.0 - pmf(f, 0));
}

theta_sweep sweep_theta(const market_config& cfg, int to, int from, double shift,
                        int points) {
    validate_config(cfg);
    if (from < 0 || to > cfg.N || to <= from)
        fail(errc::validation, "invalid-shift",
             "mass must move up the seller count: need 0 <= from < to <= N");
    if (!(shift >= 0.0)) fail(errc::validation, "invalid-shift", "shift must be nonnegative");
    if (points < 2) fail(errc::validation, "invalid-shift", "need at least 2 grid points");

    theta_sweep sw;
    for (int i = 0; i < points; ++i) {
        const double s = shift * i / (points - 1);
        const market_config cfg_s = shifted(cfg, to, from, s);
        validate_config(cfg_s);
        const branch_state st = stable_branches(cfg_s);
        theta_sweep_point pt;
        pt.shift = s;
        pt.theta_from = cfg_s.theta[static_cast<std::size_t>(from)];
        pt.theta_to = cfg_s.theta[static_cast<std::size_t>(to)];
        pt.mixed_exists = st.mixed_exists;
        pt.mixed_q = st.mixed_q;
        pt.mixed = st.mixed;
        pt.pure_exists = st.pure_exists;
        pt.k = st.k;
        pt.pure = st.pure;
        sw.points.push_back(pt);
    }

    // bisect each existence flip to 1e-4 in probability mass
    auto locate = [&](bool theta_sweep_point::*flag, const char* name) {
        for (std::size_t i = 1; i < sw.points.size(); ++i) {
            if (sw.points[i - 1].*flag == sw.points[i].*flag) continue;
            double lo = sw.points[i - 1].shift, hi = sw.points[i].shift;
            const bool lo_state = sw.points[i - 1].*flag;
            while (hi - lo > 1e-4) {
                const double mid = 0.5 * (lo + hi);
                const branch_state st = stable_branches(shifted(cfg, to, from, mid));
                const bool state = flag == &theta_sweep_point::mixed_exists
                                       ? st.mixed_exists
                                       : st.pure_exists;
                (state == lo_state ? lo : hi) = mid;
            }
            sw.boundaries.push_back({name, 0.5 * (lo + hi)});
        }
    };
    locate(&theta_sweep_point::mixed_exists, "mixed");
    locate(&theta_sweep_point::pure_exists, "pure");
    return sw;
}

std::vector<cost_sweep_point> sweep_cost(const market_config& cfg, double c_min,
                                         double c_max, int points) {
    validate_config(cfg);
    if (!(c_min > 0.0) || !(c_max >= c_min))
        fail(errc::validation, "search-cost", "need 0 < c_min <= c_max");
    if (points < 2) fail(errc::validation, "search-cost", "need at least 2 grid points");
    std::vector<cost_sweep_point> rows;
    for (int i = 0; i < points; ++i) {
        market_config cfg_c = cfg;
        cfg_c.c = c_min + (c_max - c_min) * i / (points - 1);
        for (const equilibrium& eq : enumerate_equilibria(cfg_c)) {
            if (!eq.stable) continue;
            rows.push_back({cfg_c.c, eq.kind, eq.k, eq.q, report(cfg_c, eq)});
        }
    }
    return rows;
}

}  // namespace searchmkt
