#pragma once

#include <string>
#include <vector>

#include "searchmkt/equilibrium.hpp"
#include "searchmkt/market.hpp"

namespace searchmkt {

// Buyer-side summary of an equilibrium, currency units throughout.
struct outcome_report {
    double price_paid = 0.0;         // expected price, conditional on a purchase
    double purchase_prob = 0.0;
    double avg_virtual_price = 0.0;  // expected payment with misses counted at v
    double searches = 0.0;           // expected number of quotes gathered
    double expenditure = 0.0;        // (searches - 1) c; the first quote is free
    double surplus = 0.0;            // v - avg_virtual_price - expenditure
};

outcome_report report(const market_config& cfg, const equilibrium& eq);

// a_{nk,1} / (1 - a_{nk,0}): the share of successful trips that end at a
// monopoly price when all buyers sample k firms.  Zero for n >= N - k + 2
// and strictly decreasing in n before that.
double conditional_price_fraction(int N, int k, int n);

// Probability-mass sweep: moves shift mass from theta[from] to theta[to]
// in `points` even steps and tracks the two stable branches at
// k = N - n_low + 1.  Raises `invalid-shift` if theta[from] would go
// negative.  Requires to > from.
struct theta_sweep_point {
    double shift = 0.0;
    double theta_from = 0.0;
    double theta_to = 0.0;
    bool mixed_exists = false;
    double mixed_q = 0.0;
    outcome_report mixed;
    bool pure_exists = false;
    int k = 0;
    outcome_report pure;
};

struct sweep_boundary {
    std::string branch;  // "mixed" or "pure"
    double shift = 0.0;  // bisected to 1e-4 in probability mass
};

struct theta_sweep {
    std::vector<theta_sweep_point> points;
    std::vector<sweep_boundary> boundaries;
};

theta_sweep sweep_theta(const market_config& cfg, int to, int from, double shift,
                        int points);

// Cost sweep: stable equilibria and their reports on an even grid over
// [c_min, c_max].
struct cost_sweep_point {
    double c = 0.0;
    eq_kind kind = eq_kind::diamond;
    int k = 1;
    double q = 1.0;
    outcome_report rep;
};

std::vector<cost_sweep_point> sweep_cost(const market_config& cfg, double c_min,
                                         double c_max, int points);

}  // namespace searchmkt
