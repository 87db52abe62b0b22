#pragma once

#include <string>
#include <vector>

#include "searchmkt/market.hpp"

namespace searchmkt {

// ---------------------------------------------------------------------------
// Noisy sample sizes.  Search technology l reveals the prices of k >= l
// firms (chosen uniformly) with probability delta[l][k]; finer technologies
// cost more: technology l costs (l - 1) c.
// ---------------------------------------------------------------------------

struct noisy_tech {
    int N = 0;
    // delta[l][k], 1-based on both axes; row l supported on k = l..N
    std::vector<std::vector<double>> delta;

    bool operator==(const noisy_tech&) const = default;
};

// Checks the admissibility conditions and returns the violations as text,
// one entry per failed condition (an empty vector means admissible):
//   1. each row is a distribution supported on k >= l,
//   2. lower technologies dominate: partial sums of row l stay above row l+1,
//   3. rows are strictly convex against every gen(n, .) on a 21-point grid.
std::vector<std::string> validate_tech(const market_config& cfg, const noisy_tech& tech);

// Seller price in the n_low market, as a fraction of v, when buyers mix
// between technologies l = N - n_low + 1 and l + 1 with weight q on l.
double noisy_price(const market_config& cfg, const noisy_tech& tech, double q, double x);

// Expected-payment gap between the two technologies (currency units); the
// analog of benefit for technology choice.
double noisy_benefit(const market_config& cfg, const noisy_tech& tech, double q);

struct noisy_root {
    double q = 0.0;
    bool stable = false;
};

std::vector<noisy_root> noisy_solve(const market_config& cfg, const noisy_tech& tech);

struct noisy_report {
    double q = 0.0;
    double price_paid = 0.0;  // conditional on a purchase
    double purchase_prob = 0.0;
    double tech_cost = 0.0;   // expected technology outlay
    double surplus = 0.0;
};

noisy_report noisy_outcomes(const market_config& cfg, const noisy_tech& tech, double q);

struct noisy_sweep_point {
    double shift = 0.0;
    double theta_from = 0.0;
    double theta_to = 0.0;
    bool exists = false;
    noisy_report rep;
};

std::vector<noisy_sweep_point> noisy_sweep_theta(const market_config& cfg,
                                                 const noisy_tech& tech, int to, int from,
                                                 double shift, int points);

// ---------------------------------------------------------------------------
// Search cost heterogeneity.  A share lambda of buyers observes all prices
// for free; the rest pay c per quote and mix between sampling N - 1 firms
// (probability q) and all N.  Requires n_low = 2.
// ---------------------------------------------------------------------------

// Captive-to-contested ratio mu = q (1 - lambda) / (N - 2 q (1 - lambda)).
double het_mu(double q, double lambda, int N);

// Duopoly price law: a seller charging p is beaten with probability
// 1 - x2(p), where x2(p) = mu (v / p - 1) on [mu v / (1 + mu), v].
struct het_law {
    double mu = 0.0;
    double v = 1.0;
    double p_low = 0.0;
};

het_law het_duopoly_law(const market_config& cfg, double lambda, double q);

double het_expected_price(const het_law& law);  // E p, closed form
double het_expected_min(const het_law& law);    // E min{p1, p2}, closed form

// E p - E min = v mu ((1 + 2 mu) log(1 + 1/mu) - 2).
double het_gap(double mu, double v);

// theta_2 (2 / N) (E p - E min): the value of the N-th quote (currency).
double het_benefit(const market_config& cfg, double lambda, double q);

// M(mu) = log(1 + 1/mu) - (3 + 4 mu) / ((1 + mu)(1 + 4 mu)); the benefit
// peaks where M vanishes, and M has exactly one root.
double het_m(double mu);

struct het_root {
    double q = 0.0;
    double mu = 0.0;
    bool stable = false;
};

std::vector<het_root> het_solve(const market_config& cfg, double lambda);

struct het_report {
    double q = 0.0;
    double mu = 0.0;
    double price_paid = 0.0;  // costly buyers, conditional on a purchase
    double purchase_prob = 0.0;
    double surplus = 0.0;     // costly buyers
};

het_report het_outcomes(const market_config& cfg, double lambda, double q);

struct het_sweep_point {
    double shift = 0.0;
    double theta2 = 0.0;
    double theta_to = 0.0;
    bool exists = false;
    het_report rep;
};

// Moves mass from theta_2 to theta_to (to >= 3) and follows the stable root.
std::vector<het_sweep_point> het_sweep_theta(const market_config& cfg, double lambda,
                                             int to, double shift, int points);

}  // namespace searchmkt
