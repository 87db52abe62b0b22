#pragma once

#include <optional>
#include <string>

#include "searchmkt/extensions.hpp"
#include "searchmkt/market.hpp"

namespace searchmkt {

// Everything a run file can carry. Parsing is permissive about content
// (validate_config and friends enforce the economics); it is strict about
// syntax and unknown keys.
struct run_config {
    market_config market;
    std::optional<double> lambda;
    std::optional<int> shift_from;
    std::optional<int> shift_to;
    std::optional<double> shift;
    std::optional<double> c_min;
    std::optional<double> c_max;
    std::optional<noisy_tech> tech;

    bool operator==(const run_config&) const = default;
};

// Line-oriented `key = value` with # comments. `theta` takes a comma list of
// N + 1 masses; a `delta:` line (N must already be set) is followed by N
// comma-separated rows of the sampling matrix.
run_config parse_config(const std::string& text);

run_config load_config(const std::string& path);

// Canonical text form; numbers use %.17g so parse(render(c)) == c exactly.
std::string render_config(const run_config& cfg);

}  // namespace searchmkt
