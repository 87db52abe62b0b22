#pragma once

#include <vector>

#include "searchmkt/market.hpp"

namespace searchmkt {

enum class law_tag { unreached, monopoly_atom, marginal_cost_atom, dispersed };

// Equilibrium price law of one market size.  Prices are stored as fractions
// of v.  A dispersed law is parametrized by the survival coordinate
// x in [0, 1]: a seller charging p(x) loses the comparison against a rival
// with probability 1 - x, and p is strictly decreasing in x.
struct price_law {
    law_tag tag = law_tag::unreached;
    int n = 0;
    int N = 0;
    search_mix mix{};
    double b0 = 0.0;      // beta'(0); pins the common profit level
    double p_low = 0.0;   // p(1) = b0 / beta'(1)
    double profit = 0.0;  // per-buyer seller profit b0 / n
};

// Sample-size generating function a seller faces: the q-mix of gen across
// the two search depths.  Sides with zero weight are skipped, so the
// expressions stay valid at q = 0 and q = 1.
double beta(const market_config& cfg, const search_mix& mix, int n, double x);
double beta_prime(const market_config& cfg, const search_mix& mix, int n, double x);
double beta_dd(const market_config& cfg, const search_mix& mix, int n, double x);

// p(x) = v beta'(0) / beta'(x).
double price_inverse(const market_config& cfg, const search_mix& mix, int n, double x);
double price_inverse(const price_law& law, double x);  // fraction of v

// Fraction of sellers charging at most p; p as a fraction of v.  Found by
// bisection on price_inverse (absolute tolerance 1e-12 on x).  Prices
// outside [p_low, 1] raise `out-of-support`.
double price_cdf(const price_law& law, double p);

// Price law per market size n = 0..N for a given search mix.
//   n = 0                      unreached
//   n = 1                      monopoly atom at v
//   1 < n < n_low              unreached (zero probability)
//   n_low <= n <= N-k_min+1    dispersed
//   n >= N-k_min+2             atom at marginal cost
// When every searcher samples just one firm (k = 1, q = 1) the dispersed
// branch collapses to p = v in every market, reported as monopoly atoms.
// A mix whose smallest depth already guarantees two quotes at n_low
// (k_min >= N-n_low+2) leaves no captive buyers there and raises
// `degenerate-dispersion`.
std::vector<price_law> build_price_laws(const market_config& cfg, const search_mix& mix);

}  // namespace searchmkt
