#pragma once

#include <cstdint>
#include <vector>

#include "searchmkt/market.hpp"
#include "searchmkt/pricing.hpp"

namespace searchmkt {

struct mc_stat {
    double mean = 0.0;
    double se = 0.0;
};

// profit samples of dispersed-price sellers, bucketed by which tenth of the
// survival coordinate their quote fell in; equal-profit pricing makes every
// bucket's mean match the analytic per-seller profit
struct profit_cell {
    int n = 0;
    int decile = 0;
    std::uint64_t count = 0;
    double mean = 0.0;
    double se = 0.0;
    double analytic = 0.0;
    double z = 0.0;
};

struct mc_report {
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    mc_stat price_paid;  // conditional on a purchase, currency
    double purchase_prob = 0.0;
    double purchase_se = 0.0;
    mc_stat payoff_low;   // gross payoff when sampling k firms, currency
    mc_stat payoff_high;  // when sampling k + 1 firms
    mc_stat gap_up;       // payoff_high - payoff_low, paired per trial
    bool has_gap_up = false;
    mc_stat gap_down;  // payoff at k minus payoff at k - 1
    bool has_gap_down = false;
    std::vector<profit_cell> cells;
    double max_profit_z = 0.0;
};

// Simulates the search market under the given price laws and search mix.
// The laws need not be the equilibrium response to the mix; feeding a
// deliberately inconsistent pair is how the indifference checks are falsified.
mc_report simulate(const market_config& cfg, const search_mix& mix,
                   const std::vector<price_law>& laws, std::uint64_t trials,
                   std::uint64_t seed);

// Identical sampling in a plain loop; bit-for-bit equal to simulate().
mc_report simulate_serial(const market_config& cfg, const search_mix& mix,
                          const std::vector<price_law>& laws, std::uint64_t trials,
                          std::uint64_t seed);

}  // namespace searchmkt
