#pragma once

#include <array>
#include <string>
#include <vector>

#include "searchmkt/market.hpp"
#include "searchmkt/pricing.hpp"

namespace searchmkt {

enum class eq_kind { diamond, pure_search, mixed_search };

struct equilibrium {
    eq_kind kind = eq_kind::diamond;
    int k = 1;
    double q = 1.0;  // weight on k searches; 1 for pure strategies
    std::vector<price_law> laws;
    bool stable = false;
    bool marginal = false;  // pure strategy sitting exactly on a cutoff
    double indiff_residual = 0.0;      // |benefit - c| at the solved mix
    double participation_slack = 0.0;  // v minus the expected total outlay
    std::string note;
};

struct mixed_root {
    double q = 0.0;
    bool stable = false;  // benefit slopes upward in q at the root
};

struct branch_range {
    double c_lo = 0.0;      // smaller endpoint benefit; no roots below it
    double c_hi = 0.0;      // peak benefit; no roots above it
    double q_at_peak = 0.0;
};

struct cutoff_row {
    int k = 0;
    bool has_pure = false;
    double pure_lo = 0.0;
    double pure_hi = 0.0;
    branch_range mixed;
};

// Expected payment P_j of a buyer sampling j firms when sellers play the
// given laws; a missed purchase is counted at v, so P_j prices the whole
// trip.  Currency units.
double virtual_price(const market_config& cfg, const std::vector<price_law>& laws, int j);

// P_k - P_{k+1} when buyers mix between k and k + 1 with weight q on k.
// Atom markets cancel from the difference, which runs over dispersed laws
// only.  Currency units.
double benefit(const market_config& cfg, int k, double q);

// Same quantity after integrating by parts; used as a cross-check.
double benefit_ibp(const market_config& cfg, int k, double q);

// Solutions of benefit(k, q) = c in q, at most two, sorted by q.  With two
// roots exactly one lies on the rising branch.
std::vector<mixed_root> solve_mixed(const market_config& cfg, int k, double c);

// Cost interval [c_lo, c_hi] on which all buyers sampling k firms is an
// equilibrium; 2 <= k <= N - n_low + 1.
std::array<double, 2> pure_interval(const market_config& cfg, int k);

branch_range mixed_cost_range(const market_config& cfg, int k);

std::vector<cutoff_row> cutoff_table(const market_config& cfg);

// Monopoly pricing in every reachable market, single search.  Exists for
// every positive search cost.
equilibrium diamond_equilibrium(const market_config& cfg);

// All equilibria at cfg.c: the monopoly outcome plus every supported pure
// and mixed search pattern, sorted by kind, then k, then q.
std::vector<equilibrium> enumerate_equilibria(const market_config& cfg);

// The mixed equilibrium on the rising branch at k = N - n_low + 1, the
// unique stable one when c is small.  Raises `cost-too-large` when that
// branch has no root at cfg.c.
equilibrium stable_small_c(const market_config& cfg);

}  // namespace searchmkt
