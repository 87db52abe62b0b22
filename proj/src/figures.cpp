#include "searchmkt/figures.hpp"

#include <algorithm>

#include "searchmkt/csvio.hpp"
#include "searchmkt/equilibrium.hpp"
#include "searchmkt/oracle.hpp"
#include "searchmkt/outcomes.hpp"

namespace searchmkt {

namespace {

const char* kind_name(eq_kind kind) {
    switch (kind) {
        case eq_kind::diamond: return "diamond";
        case eq_kind::pure_search: return "pure";
        default: return "mixed";
    }
}

std::vector<std::string> eq_row(const market_config& cfg, const equilibrium& eq) {
    const outcome_report rep = report(cfg, eq);
    return {kind_name(eq.kind),
            csv_int(eq.k),
            csv_num(eq.q),
            eq.stable ? "1" : "0",
            eq.marginal ? "1" : "0",
            csv_num(rep.price_paid),
            csv_num(rep.purchase_prob),
            csv_num(rep.avg_virtual_price),
            csv_num(rep.searches),
            csv_num(rep.expenditure),
            csv_num(rep.surplus),
            csv_num(eq.indiff_residual),
            csv_num(eq.participation_slack),
            eq.note};
}

const std::vector<std::string> eq_header = {
    "kind",     "k",           "q",
    "stable",   "marginal",    "price_paid",
    "purchase_prob", "avg_virtual_price", "searches",
    "expenditure", "surplus",  "indiff_residual",
    "participation_slack", "note"};

market_config figure1_config() {
    market_config cfg;
    cfg.N = 3;
    cfg.v = 1.0;
    cfg.c = 0.05;
    cfg.theta = {0.0, 0.05, 0.90, 0.05};
    return cfg;
}

market_config example51_config() {
    market_config cfg;
    cfg.N = 3;
    cfg.v = 1.0;
    cfg.c = 0.05;
    cfg.theta = {0.0, 0.0, 0.9, 0.1};
    return cfg;
}

}  // namespace

data_table solve_table(const market_config& cfg) {
    data_table t;
    t.header = eq_header;
    t.rows.push_back(eq_row(cfg, stable_small_c(cfg)));
    return t;
}

data_table enumerate_table(const market_config& cfg) {
    data_table t;
    t.header = eq_header;
    for (const equilibrium& eq : enumerate_equilibria(cfg)) t.rows.push_back(eq_row(cfg, eq));
    return t;
}

data_table cutoffs_table(const market_config& cfg) {
    data_table t;
    t.header = {"k", "mixed_lo", "mixed_hi", "q_at_peak", "pure_lo", "pure_hi"};
    for (const cutoff_row& row : cutoff_table(cfg)) {
        t.rows.push_back({csv_int(row.k), csv_num(row.mixed.c_lo), csv_num(row.mixed.c_hi),
                          csv_num(row.mixed.q_at_peak),
                          row.has_pure ? csv_num(row.pure_lo) : "",
                          row.has_pure ? csv_num(row.pure_hi) : ""});
    }
    return t;
}

data_table sweep_theta_table(const market_config& cfg, int to, int from, double shift,
                             int points) {
    const theta_sweep sweep = sweep_theta(cfg, to, from, shift, points);
    data_table t;
    t.header = {"shift",     "theta_from", "theta_to", "branch",      "k",
                "q",         "price_paid", "purchase_prob", "searches", "expenditure",
                "surplus"};
    for (const theta_sweep_point& pt : sweep.points) {
        if (pt.mixed_exists)
            t.rows.push_back({csv_num(pt.shift), csv_num(pt.theta_from), csv_num(pt.theta_to),
                              "mixed", csv_int(pt.k), csv_num(pt.mixed_q),
                              csv_num(pt.mixed.price_paid), csv_num(pt.mixed.purchase_prob),
                              csv_num(pt.mixed.searches), csv_num(pt.mixed.expenditure),
                              csv_num(pt.mixed.surplus)});
        if (pt.pure_exists)
            t.rows.push_back({csv_num(pt.shift), csv_num(pt.theta_from), csv_num(pt.theta_to),
                              "pure", csv_int(pt.k), csv_num(1.0),
                              csv_num(pt.pure.price_paid), csv_num(pt.pure.purchase_prob),
                              csv_num(pt.pure.searches), csv_num(pt.pure.expenditure),
                              csv_num(pt.pure.surplus)});
    }
    for (const sweep_boundary& b : sweep.boundaries)
        t.rows.push_back({csv_num(b.shift), "", "", b.branch + "-boundary", "", "", "", "", "",
                          "", ""});
    return t;
}

data_table sweep_cost_table(const market_config& cfg, double c_min, double c_max, int points) {
    data_table t;
    t.header = {"c",        "kind",          "k",
                "q",        "price_paid",    "purchase_prob",
                "searches", "expenditure",   "surplus"};
    for (const cost_sweep_point& pt : sweep_cost(cfg, c_min, c_max, points))
        t.rows.push_back({csv_num(pt.c), kind_name(pt.kind), csv_int(pt.k), csv_num(pt.q),
                          csv_num(pt.rep.price_paid), csv_num(pt.rep.purchase_prob),
                          csv_num(pt.rep.searches), csv_num(pt.rep.expenditure),
                          csv_num(pt.rep.surplus)});
    return t;
}

data_table noisy_roots_table(const market_config& cfg, const noisy_tech& tech) {
    data_table t;
    t.header = {"q", "stable", "price_paid", "purchase_prob", "tech_cost", "surplus"};
    for (const noisy_root& r : noisy_solve(cfg, tech)) {
        const noisy_report rep = noisy_outcomes(cfg, tech, r.q);
        t.rows.push_back({csv_num(r.q), r.stable ? "1" : "0", csv_num(rep.price_paid),
                          csv_num(rep.purchase_prob), csv_num(rep.tech_cost),
                          csv_num(rep.surplus)});
    }
    return t;
}

data_table noisy_sweep_table(const market_config& cfg, const noisy_tech& tech, int to, int from,
                             double shift, int points) {
    data_table t;
    t.header = {"shift",      "theta_from", "theta_to", "exists", "q",
                "price_paid", "purchase_prob", "tech_cost", "surplus"};
    for (const noisy_sweep_point& pt : noisy_sweep_theta(cfg, tech, to, from, shift, points)) {
        if (pt.exists)
            t.rows.push_back({csv_num(pt.shift), csv_num(pt.theta_from), csv_num(pt.theta_to),
                              "1", csv_num(pt.rep.q), csv_num(pt.rep.price_paid),
                              csv_num(pt.rep.purchase_prob), csv_num(pt.rep.tech_cost),
                              csv_num(pt.rep.surplus)});
        else
            t.rows.push_back({csv_num(pt.shift), csv_num(pt.theta_from), csv_num(pt.theta_to),
                              "0", "", "", "", "", ""});
    }
    return t;
}

data_table hetero_roots_table(const market_config& cfg, double lambda) {
    data_table t;
    t.header = {"q", "mu", "stable", "price_paid", "purchase_prob", "surplus"};
    for (const het_root& r : het_solve(cfg, lambda)) {
        const het_report rep = het_outcomes(cfg, lambda, r.q);
        t.rows.push_back({csv_num(r.q), csv_num(r.mu), r.stable ? "1" : "0",
                          csv_num(rep.price_paid), csv_num(rep.purchase_prob),
                          csv_num(rep.surplus)});
    }
    return t;
}

data_table hetero_sweep_table(const market_config& cfg, double lambda, int to, double shift,
                              int points) {
    data_table t;
    t.header = {"shift", "theta2", "theta_to", "exists",
                "q",     "mu",     "price_paid", "purchase_prob",
                "surplus"};
    for (const het_sweep_point& pt : het_sweep_theta(cfg, lambda, to, shift, points)) {
        if (pt.exists)
            t.rows.push_back({csv_num(pt.shift), csv_num(pt.theta2), csv_num(pt.theta_to), "1",
                              csv_num(pt.rep.q), csv_num(pt.rep.mu), csv_num(pt.rep.price_paid),
                              csv_num(pt.rep.purchase_prob), csv_num(pt.rep.surplus)});
        else
            t.rows.push_back({csv_num(pt.shift), csv_num(pt.theta2), csv_num(pt.theta_to), "0",
                              "", "", "", "", ""});
    }
    return t;
}

data_table validate_table(const market_config& cfg, std::uint64_t trials, std::uint64_t seed) {
    const equilibrium eq = stable_small_c(cfg);
    const outcome_report rep = report(cfg, eq);
    const mc_report mc = simulate(cfg, {eq.k, eq.q}, eq.laws, trials, seed);
    data_table t;
    t.header = {"statistic", "value", "analytic", "se", "z"};
    auto push = [&](const std::string& name, double value, double analytic, double se) {
        const double z = se > 0.0 ? (value - analytic) / se : 0.0;
        t.rows.push_back({name, csv_num(value), csv_num(analytic), csv_num(se), csv_num(z)});
    };
    push("price_paid", mc.price_paid.mean, rep.price_paid, mc.price_paid.se);
    push("purchase_prob", mc.purchase_prob, rep.purchase_prob, mc.purchase_se);
    if (mc.has_gap_up) push("benefit_gap_up", mc.gap_up.mean, cfg.c, mc.gap_up.se);
    if (mc.has_gap_down) push("benefit_gap_down", mc.gap_down.mean, cfg.c, mc.gap_down.se);
    for (const profit_cell& cell : mc.cells)
        push("profit_n" + std::to_string(cell.n) + "_d" + std::to_string(cell.decile), cell.mean,
             cell.analytic, cell.se);
    return t;
}

data_table figure1(int grid) {
    const market_config base = figure1_config();
    data_table t;
    t.header = {"series", "t", "k", "q", "value"};
    for (int k = 1; k <= 2; ++k) {
        for (int i = 0; i < grid; ++i) {
            const double frac = static_cast<double>(i) / (grid - 1);
            const double tt = (k - 1) + frac;
            const double q = 1.0 - frac;
            t.rows.push_back({"benefit", csv_num(tt), csv_int(k), csv_num(q),
                              csv_num(benefit(base, k, q))});
        }
    }
    const std::array<double, 2> pure2 = pure_interval(base, 2);
    t.rows.push_back({"pure_range", csv_num(1.0), "2", csv_num(1.0), csv_num(pure2[0])});
    t.rows.push_back({"pure_range", csv_num(1.0), "2", csv_num(1.0), csv_num(pure2[1])});
    const double costs[] = {0.02, 0.05, 0.11};
    for (const double c : costs) {
        t.rows.push_back({"cost", csv_num(0.0), "", "", csv_num(c)});
        t.rows.push_back({"cost", csv_num(2.0), "", "", csv_num(c)});
    }
    for (const double c : costs) {
        std::vector<std::array<double, 3>> hits;  // t, k, q
        for (int k = 1; k <= 2; ++k)
            for (const mixed_root& r : solve_mixed(base, k, c))
                hits.push_back({static_cast<double>(k) - r.q, static_cast<double>(k), r.q});
        if (c >= pure2[0] && c <= pure2[1]) hits.push_back({1.0, 2.0, 1.0});
        std::sort(hits.begin(), hits.end());
        for (const auto& h : hits)
            t.rows.push_back({"crossing", csv_num(h[0]), csv_int(static_cast<long long>(h[1])),
                              csv_num(h[2]), csv_num(c)});
    }
    return t;
}

data_table figure2() {
    data_table t;
    t.header = {"n", "fraction"};
    for (int n = 1; n <= 10; ++n)
        t.rows.push_back({csv_int(n), csv_num(conditional_price_fraction(10, 3, n))});
    return t;
}

data_table figure34(int grid) {
    market_config cfg = example51_config();
    cfg.c = 0.04;
    const theta_sweep sweep = sweep_theta(cfg, 3, 2, 0.4, grid);
    data_table t;
    t.header = {"theta3", "branch", "k", "q", "price_paid", "surplus"};
    for (const theta_sweep_point& pt : sweep.points) {
        const double theta3 = 0.1 + pt.shift;
        if (pt.mixed_exists)
            t.rows.push_back({csv_num(theta3), "mixed", csv_int(pt.k), csv_num(pt.mixed_q),
                              csv_num(pt.mixed.price_paid), csv_num(pt.mixed.surplus)});
        if (pt.pure_exists)
            t.rows.push_back({csv_num(theta3), "pure", csv_int(pt.k), csv_num(1.0),
                              csv_num(pt.pure.price_paid), csv_num(pt.pure.surplus)});
    }
    return t;
}

data_table example51() {
    data_table t;
    t.header = {"theta3",     "k",       "q",        "share_kplus1",
                "price_paid", "surplus", "searches", "expenditure"};
    for (const double theta3 : {0.10, 0.25}) {
        market_config cfg = example51_config();
        cfg.theta = {0.0, 0.0, 1.0 - theta3, theta3};
        const equilibrium eq = stable_small_c(cfg);
        const outcome_report rep = report(cfg, eq);
        t.rows.push_back({csv_num(theta3), csv_int(eq.k), csv_num(eq.q), csv_num(1.0 - eq.q),
                          csv_num(rep.price_paid), csv_num(rep.surplus), csv_num(rep.searches),
                          csv_num(rep.expenditure)});
    }
    return t;
}

}  // namespace searchmkt
