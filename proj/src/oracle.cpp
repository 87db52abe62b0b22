#include "searchmkt/oracle.hpp"

#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>

#include "searchmkt/errors.hpp"
#include "searchmkt/hypergeom.hpp"
#include "searchmkt/rng.hpp"

namespace searchmkt {

namespace {

constexpr std::uint64_t trials_per_block = 16384;

struct block_acc {
    std::uint64_t trials = 0;
    std::uint64_t bought = 0;
    double paid_sum = 0, paid_sq = 0;
    double low_sum = 0, low_sq = 0;
    double high_sum = 0, high_sq = 0;
    double up_sum = 0, up_sq = 0;
    double down_sum = 0, down_sq = 0;
    std::vector<double> cell_sum, cell_sq;
    std::vector<std::uint64_t> cell_cnt;
};

struct prefix_snap {
    bool any = false;
    double best = 0.0;
    int winner = -1;
};

void check_inputs(const market_config& cfg, const search_mix& mix,
                  const std::vector<price_law>& laws) {
    validate_config(cfg);
    validate_mix(cfg, mix);
    if (laws.size() != static_cast<std::size_t>(cfg.N) + 1)
        fail(errc::internal, "invalid-equilibrium", "need one price law per seller count");
    for (int n = 1; n <= cfg.N; ++n)
        if (cfg.theta[static_cast<std::size_t>(n)] > 0.0 &&
            laws[static_cast<std::size_t>(n)].tag == law_tag::unreached)
            fail(errc::internal, "invalid-equilibrium",
                 "seller count " + std::to_string(n) + " is reachable but has no price law");
}

// One block of trials with its own deterministically derived stream, so the
// parallel and serial drivers produce identical accumulators per block.
void run_block(const market_config& cfg, const search_mix& mix,
               const std::vector<price_law>& laws, std::uint64_t seed, std::uint64_t block,
               std::uint64_t count, block_acc& acc) {
    const int N = cfg.N;
    const int k = mix.k;
    const bool has_up = k + 1 <= N;
    const bool has_down = k >= 2;
    const int up = has_up ? k + 1 : k;
    const int jmax = up;

    xoshiro256pp rng(seed + 0x9E3779B97F4A7C15ULL * (block + 1));

    std::array<double, max_firms + 1> theta_cdf{};
    {
        double run = 0.0;
        for (int n = 0; n <= N; ++n) {
            run += cfg.theta[static_cast<std::size_t>(n)];
            theta_cdf[static_cast<std::size_t>(n)] = run;
        }
        theta_cdf[static_cast<std::size_t>(N)] = 1.0;
    }

    std::array<int, max_firms> seller_ids{}, buyer_ids{};
    std::array<double, max_firms> price_of{}, u_of{};

    acc.trials = count;
    for (std::uint64_t t = 0; t < count; ++t) {
        const double un = rng.u01();
        int n = 0;
        while (theta_cdf[static_cast<std::size_t>(n)] < un) ++n;

        std::iota(seller_ids.begin(), seller_ids.begin() + N, 0);
        std::uint64_t active_mask = 0;
        for (int i = 0; i < n; ++i) {
            const auto j = static_cast<int>(rng.below(static_cast<std::uint64_t>(N - i))) + i;
            std::swap(seller_ids[static_cast<std::size_t>(i)],
                      seller_ids[static_cast<std::size_t>(j)]);
            active_mask |= 1ULL << seller_ids[static_cast<std::size_t>(i)];
        }

        const price_law& law = laws[static_cast<std::size_t>(n)];
        const bool dispersed = n > 0 && law.tag == law_tag::dispersed;
        for (int i = 0; i < n; ++i) {
            const auto id = static_cast<std::size_t>(seller_ids[static_cast<std::size_t>(i)]);
            if (dispersed) {
                const double u = rng.u01();
                u_of[id] = u;
                price_of[id] = price_inverse(law, u);
            } else {
                price_of[id] = law.tag == law_tag::monopoly_atom ? 1.0 : 0.0;
            }
        }

        std::iota(buyer_ids.begin(), buyer_ids.begin() + N, 0);
        for (int i = 0; i < jmax; ++i) {
            const auto j = static_cast<int>(rng.below(static_cast<std::uint64_t>(N - i))) + i;
            std::swap(buyer_ids[static_cast<std::size_t>(i)],
                      buyer_ids[static_cast<std::size_t>(j)]);
        }

        prefix_snap snap_down, snap_k, snap_up;
        {
            prefix_snap cur;
            int ties = 0;
            for (int pos = 0; pos < jmax; ++pos) {
                const int id = buyer_ids[static_cast<std::size_t>(pos)];
                if (active_mask >> id & 1) {
                    const double p = price_of[static_cast<std::size_t>(id)];
                    if (!cur.any || p < cur.best) {
                        cur = {true, p, id};
                        ties = 1;
                    } else if (p == cur.best) {
                        ++ties;
                        if (rng.below(static_cast<std::uint64_t>(ties)) == 0) cur.winner = id;
                    }
                }
                const int depth = pos + 1;
                if (has_down && depth == k - 1) snap_down = cur;
                if (depth == k) snap_k = cur;
                if (depth == up) snap_up = cur;
            }
        }

        const bool deep = !(mix.q == 1.0 || rng.u01() < mix.q);
        const prefix_snap& chosen = deep && has_up ? snap_up : snap_k;

        if (chosen.any) {
            ++acc.bought;
            acc.paid_sum += chosen.best;
            acc.paid_sq += chosen.best * chosen.best;
        }
        const double pay_k = snap_k.any ? 1.0 - snap_k.best : 0.0;
        acc.low_sum += pay_k;
        acc.low_sq += pay_k * pay_k;
        if (has_up) {
            const double pay_up = snap_up.any ? 1.0 - snap_up.best : 0.0;
            acc.high_sum += pay_up;
            acc.high_sq += pay_up * pay_up;
            const double g = pay_up - pay_k;
            acc.up_sum += g;
            acc.up_sq += g * g;
        }
        if (has_down) {
            const double pay_dn = snap_down.any ? 1.0 - snap_down.best : 0.0;
            const double g = pay_k - pay_dn;
            acc.down_sum += g;
            acc.down_sq += g * g;
        }

        if (dispersed) {
            for (int i = 0; i < n; ++i) {
                const int id = seller_ids[static_cast<std::size_t>(i)];
                const double profit =
                    chosen.any && chosen.winner == id ? price_of[static_cast<std::size_t>(id)]
                                                      : 0.0;
                const int decile =
                    std::min(9, static_cast<int>(u_of[static_cast<std::size_t>(id)] * 10.0));
                const auto cell = static_cast<std::size_t>(n * 10 + decile);
                acc.cell_sum[cell] += profit;
                acc.cell_sq[cell] += profit * profit;
                ++acc.cell_cnt[cell];
            }
        }
    }
}

mc_stat finish(double sum, double sq, std::uint64_t cnt) {
    mc_stat s;
    if (cnt == 0) return s;
    s.mean = sum / static_cast<double>(cnt);
    if (cnt >= 2) {
        const double var =
            std::max(0.0, (sq - static_cast<double>(cnt) * s.mean * s.mean) /
                              static_cast<double>(cnt - 1));
        s.se = std::sqrt(var / static_cast<double>(cnt));
    }
    return s;
}

void scale(mc_stat& s, double v) {
    s.mean *= v;
    s.se *= v;
}

mc_report run(const market_config& cfg, const search_mix& mix,
              const std::vector<price_law>& laws, std::uint64_t trials, std::uint64_t seed,
              bool parallel) {
    check_inputs(cfg, mix, laws);
    if (trials == 0) fail(errc::validation, "trial-count", "need at least one trial");

    const std::uint64_t nblocks = (trials + trials_per_block - 1) / trials_per_block;
    const std::size_t ncells = static_cast<std::size_t>(cfg.N + 1) * 10;
    std::vector<block_acc> accs(nblocks);
    for (auto& a : accs) {
        a.cell_sum.assign(ncells, 0.0);
        a.cell_sq.assign(ncells, 0.0);
        a.cell_cnt.assign(ncells, 0);
    }
    auto block_size = [&](std::uint64_t b) {
        return b + 1 < nblocks ? trials_per_block : trials - trials_per_block * (nblocks - 1);
    };

    if (parallel) {
#pragma omp parallel for schedule(static)
        for (long long b = 0; b < static_cast<long long>(nblocks); ++b) {
            const auto ub = static_cast<std::uint64_t>(b);
            run_block(cfg, mix, laws, seed, ub, block_size(ub), accs[static_cast<std::size_t>(b)]);
        }
    } else {
        for (std::uint64_t b = 0; b < nblocks; ++b)
            run_block(cfg, mix, laws, seed, b, block_size(b), accs[static_cast<std::size_t>(b)]);
    }

    block_acc total;
    total.cell_sum.assign(ncells, 0.0);
    total.cell_sq.assign(ncells, 0.0);
    total.cell_cnt.assign(ncells, 0);
    for (const block_acc& a : accs) {  // fixed ascending order keeps merges reproducible
        total.trials += a.trials;
        total.bought += a.bought;
        total.paid_sum += a.paid_sum;
        total.paid_sq += a.paid_sq;
        total.low_sum += a.low_sum;
        total.low_sq += a.low_sq;
        total.high_sum += a.high_sum;
        total.high_sq += a.high_sq;
        total.up_sum += a.up_sum;
        total.up_sq += a.up_sq;
        total.down_sum += a.down_sum;
        total.down_sq += a.down_sq;
        for (std::size_t i = 0; i < ncells; ++i) {
            total.cell_sum[i] += a.cell_sum[i];
            total.cell_sq[i] += a.cell_sq[i];
            total.cell_cnt[i] += a.cell_cnt[i];
        }
    }

    mc_report rep;
    rep.trials = trials;
    rep.seed = seed;
    rep.has_gap_up = mix.k + 1 <= cfg.N;
    rep.has_gap_down = mix.k >= 2;
    rep.price_paid = finish(total.paid_sum, total.paid_sq, total.bought);
    rep.purchase_prob = static_cast<double>(total.bought) / static_cast<double>(total.trials);
    rep.purchase_se = std::sqrt(rep.purchase_prob * (1.0 - rep.purchase_prob) /
                                static_cast<double>(total.trials));
    rep.payoff_low = finish(total.low_sum, total.low_sq, total.trials);
    if (rep.has_gap_up) {
        rep.payoff_high = finish(total.high_sum, total.high_sq, total.trials);
        rep.gap_up = finish(total.up_sum, total.up_sq, total.trials);
    }
    if (rep.has_gap_down) rep.gap_down = finish(total.down_sum, total.down_sq, total.trials);
    scale(rep.price_paid, cfg.v);
    scale(rep.payoff_low, cfg.v);
    scale(rep.payoff_high, cfg.v);
    scale(rep.gap_up, cfg.v);
    scale(rep.gap_down, cfg.v);

    for (int n = 1; n <= cfg.N; ++n) {
        if (laws[static_cast<std::size_t>(n)].tag != law_tag::dispersed) continue;
        for (int d = 0; d < 10; ++d) {
            const auto i = static_cast<std::size_t>(n * 10 + d);
            if (total.cell_cnt[i] < 2) continue;
            profit_cell cell;
            cell.n = n;
            cell.decile = d;
            cell.count = total.cell_cnt[i];
            const mc_stat s = finish(total.cell_sum[i], total.cell_sq[i], total.cell_cnt[i]);
            cell.mean = s.mean * cfg.v;
            cell.se = s.se * cfg.v;
            cell.analytic = laws[static_cast<std::size_t>(n)].profit * cfg.v;
            cell.z = cell.se > 0.0 ? (cell.mean - cell.analytic) / cell.se : 0.0;
            rep.max_profit_z = std::max(rep.max_profit_z, std::fabs(cell.z));
            rep.cells.push_back(cell);
        }
    }
    return rep;
}

}  // namespace

mc_report simulate(const market_config& cfg, const search_mix& mix,
                   const std::vector<price_law>& laws, std::uint64_t trials,
                   std::uint64_t seed) {
    return run(cfg, mix, laws, trials, seed, true);
}

mc_report simulate_serial(const market_config& cfg, const search_mix& mix,
                          const std::vector<price_law>& laws, std::uint64_t trials,
                          std::uint64_t seed) {
    return run(cfg, mix, laws, trials, seed, false);
}

}  // namespace searchmkt
