#pragma once

#include <vector>

namespace searchmkt {

// Market primitives: N firms, of which a random number n stock the product
// and act as sellers; buyers value the product at v and pay c per quote
// beyond the first.
struct market_config {
    int N = 0;
    double v = 1.0;
    double c = 0.0;
    std::vector<double> theta;  // size N + 1; theta[n] = P(n sellers)

    bool operator==(const market_config&) const = default;
};

void validate_config(const market_config& cfg);

bool oligopoly_possible(const market_config& cfg);  // theta_0 + theta_1 < 1

// Smallest n >= 2 with theta_n > 0; raises `no-oligopoly` when there is none.
int n_lower(const market_config& cfg);

// Buyers sample k firms with probability q and k + 1 with probability 1 - q.
struct search_mix {
    int k = 1;
    double q = 1.0;
};

void validate_mix(const market_config& cfg, const search_mix& mix);

int k_min(const search_mix& mix);  // smallest sample size used with mass

}  // namespace searchmkt
