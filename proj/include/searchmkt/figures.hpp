#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "searchmkt/extensions.hpp"
#include "searchmkt/market.hpp"

namespace searchmkt {

struct data_table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

// Tables behind the CLI commands; kept as a library so tests can compare
// them without spawning processes.
data_table solve_table(const market_config& cfg);
data_table enumerate_table(const market_config& cfg);
data_table cutoffs_table(const market_config& cfg);
data_table sweep_theta_table(const market_config& cfg, int to, int from, double shift,
                             int points);
data_table sweep_cost_table(const market_config& cfg, double c_min, double c_max, int points);
data_table noisy_roots_table(const market_config& cfg, const noisy_tech& tech);
data_table noisy_sweep_table(const market_config& cfg, const noisy_tech& tech, int to, int from,
                             double shift, int points);
data_table hetero_roots_table(const market_config& cfg, double lambda);
data_table hetero_sweep_table(const market_config& cfg, double lambda, int to, double shift,
                              int points);
data_table validate_table(const market_config& cfg, std::uint64_t trials, std::uint64_t seed);

// Fixed-parameter reproductions; the grid argument controls resolution only.
data_table figure1(int grid = 101);   // benefit walk, cost lines, crossings, pure range
data_table figure2();                 // single-quote fraction by seller count
data_table figure34(int grid = 50);   // both branches as availability shifts up
data_table example51();               // two-row before/after comparison

}  // namespace searchmkt
