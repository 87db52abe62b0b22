#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "searchmkt/configio.hpp"
#include "searchmkt/csvio.hpp"
#include "searchmkt/errors.hpp"
#include "searchmkt/figures.hpp"

namespace {

using namespace searchmkt;

void emit(const data_table& table, const std::string& out_path) {
    const std::string text = render_csv(table.header, table.rows);
    if (out_path.empty())
        std::cout << text;
    else
        write_text_atomic(out_path, text);
}

int pick_grid(int grid, int fallback) { return grid > 0 ? grid : fallback; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"equilibrium solver for search markets with random seller counts"};
    app.require_subcommand(1);

    std::string config_path, out_path, figure_id;
    std::uint64_t seed = 20240901;
    std::uint64_t trials = 1000000;
    int grid = 0;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* opt = sub->add_option("--config", config_path, "run configuration file");
        if (needs_config) opt->required();
        sub->add_option("--out", out_path, "output CSV path; stdout when absent");
        sub->add_option("--grid", grid, "number of grid points where a command sweeps");
    };

    add_common(app.add_subcommand("solve", "stable small-cost equilibrium"), true);
    add_common(app.add_subcommand("enumerate", "every equilibrium at the configured cost"),
               true);
    add_common(app.add_subcommand("cutoffs", "cost ranges supporting each search depth"), true);
    add_common(app.add_subcommand("sweep-theta",
                                  "track both stable branches while probability mass shifts"),
               true);
    add_common(app.add_subcommand("sweep-cost", "stable equilibria over a cost range"), true);
    add_common(app.add_subcommand("noisy", "equilibria under a noisy sampling technology"),
               true);
    add_common(app.add_subcommand("hetero", "equilibria with free-search buyers mixed in"),
               true);
    CLI::App* validate =
        app.add_subcommand("validate", "Monte Carlo check of a solved equilibrium");
    add_common(validate, true);
    validate->add_option("--trials", trials, "simulation trials");
    validate->add_option("--seed", seed, "simulation seed");
    CLI::App* figure = app.add_subcommand("figure", "fixed-parameter reference tables");
    figure->add_option("id", figure_id, "one of 1, 2, 3, 4, example51")
        ->required()
        ->check(CLI::IsMember({"1", "2", "3", "4", "example51"}));
    add_common(figure, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand("figure")) {
            if (figure_id == "1")
                emit(figure1(pick_grid(grid, 101)), out_path);
            else if (figure_id == "2")
                emit(figure2(), out_path);
            else if (figure_id == "example51")
                emit(example51(), out_path);
            else
                emit(figure34(pick_grid(grid, 50)), out_path);
            return 0;
        }

        const run_config rc = load_config(config_path);
        if (app.got_subcommand("solve")) {
            emit(solve_table(rc.market), out_path);
        } else if (app.got_subcommand("enumerate")) {
            emit(enumerate_table(rc.market), out_path);
        } else if (app.got_subcommand("cutoffs")) {
            emit(cutoffs_table(rc.market), out_path);
        } else if (app.got_subcommand("sweep-theta")) {
            if (!rc.shift_from || !rc.shift_to || !rc.shift)
                fail(errc::validation, "invalid-shift",
                     "config needs shift_from, shift_to and shift");
            emit(sweep_theta_table(rc.market, *rc.shift_to, *rc.shift_from, *rc.shift,
                                   pick_grid(grid, 50)),
                 out_path);
        } else if (app.got_subcommand("sweep-cost")) {
            if (!rc.c_min || !rc.c_max)
                fail(errc::validation, "sweep-range", "config needs c_min and c_max");
            emit(sweep_cost_table(rc.market, *rc.c_min, *rc.c_max, pick_grid(grid, 50)),
                 out_path);
        } else if (app.got_subcommand("noisy")) {
            if (!rc.tech)
                fail(errc::validation, "tech-shape", "config needs a delta: block");
            const std::vector<std::string> bad = validate_tech(rc.market, *rc.tech);
            if (!bad.empty())
                fail(errc::validation, "tech-admissibility", bad.front());
            if (rc.shift_from && rc.shift_to && rc.shift)
                emit(noisy_sweep_table(rc.market, *rc.tech, *rc.shift_to, *rc.shift_from,
                                       *rc.shift, pick_grid(grid, 50)),
                     out_path);
            else
                emit(noisy_roots_table(rc.market, *rc.tech), out_path);
        } else if (app.got_subcommand("hetero")) {
            if (!rc.lambda)
                fail(errc::validation, "shopper-share", "config needs lambda");
            if (rc.shift_to && rc.shift)
                emit(hetero_sweep_table(rc.market, *rc.lambda, *rc.shift_to, *rc.shift,
                                        pick_grid(grid, 50)),
                     out_path);
            else
                emit(hetero_roots_table(rc.market, *rc.lambda), out_path);
        } else if (app.got_subcommand("validate")) {
            emit(validate_table(rc.market, trials, seed), out_path);
        }
        return 0;
    } catch (const solver_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(e.code());
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return static_cast<int>(errc::internal);
    }
}
