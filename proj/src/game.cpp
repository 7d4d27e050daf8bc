#include "dexarb/game.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "dexarb/rng.hpp"

namespace dexarb {

namespace {

void check_action(const MarketParams& market, const DerivedQuantities& dq,
                  const Action& action, const char* who) {
    if (!action.trades) return;
    const double slack_g = 1e-9 * std::max(1.0, dq.max_gas_fee);
    const double slack_d = 1e-9 * std::max(1.0, dq.optimal_amount);
    if (!(action.gas_fee >= market.base_gas_fee - slack_g &&
          action.gas_fee <= dq.max_gas_fee + slack_g))
        throw std::invalid_argument(std::string(who) +
                                    ".gas_fee: outside [base_gas_fee, max_gas_fee]");
    if (!(action.amount >= -slack_d && action.amount <= dq.optimal_amount + slack_d))
        throw std::invalid_argument(std::string(who) + ".amount: outside [0, optimal_amount]");
}

double path_support_mass(const EquilibriumSolution& sol) {
    const double z_support =
        (sol.g_h - sol.market.base_gas_fee) / sol.derived.liquidity_b;
    return sol.path.cumulative_v_at(z_support);
}

Action sample_action_with(const EquilibriumSolution& sol, SplitMix64& rng) {
    Action action;
    if (rng.uniform01() >= sol.alpha_star) return action;
    action.trades = true;
    const double mass_target = rng.uniform01() * path_support_mass(sol);
    const double zq = sol.path.z_at_mass(mass_target);
    action.gas_fee = sol.g_h - sol.derived.liquidity_b * zq;
    action.amount = d_star(sol, action.gas_fee);
    return action;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> grid(n);
    for (std::size_t i = 0; i < n; ++i)
        grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    grid.back() = hi;
    return grid;
}

// argmax with uniformly random tie-breaking (reservoir pick).
std::size_t argmax_random_ties(const std::vector<double>& values, SplitMix64& rng) {
    std::size_t best = 0;
    double best_value = values[0];
    std::size_t tie_count = 1;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] > best_value) {
            best = i;
            best_value = values[i];
            tie_count = 1;
        } else if (values[i] == best_value) {
            ++tie_count;
            if (rng.uniform01() * static_cast<double>(tie_count) < 1.0) best = i;
        }
    }
    return best;
}

}  // namespace

double pure_payoff(const MarketParams& market, const Action& mine, const Action& theirs,
                   TieWinner tie_winner) {
    const DerivedQuantities dq = derived_quantities(market);
    check_action(market, dq, mine, "mine");
    check_action(market, dq, theirs, "theirs");
    if (!mine.trades) return 0.0;
    const bool first = !theirs.trades || mine.gas_fee > theirs.gas_fee ||
                       (mine.gas_fee == theirs.gas_fee && tie_winner == TieWinner::Me);
    if (first) return first_mover_profit(market, mine.gas_fee, mine.amount);
    return second_mover_profit(market, mine.gas_fee, mine.amount, theirs.amount);
}

Action sample_action(const EquilibriumSolution& sol, std::uint64_t rng_seed) {
    SplitMix64 rng(mix64(rng_seed));
    return sample_action_with(sol, rng);
}

SimulationReport monte_carlo_payoff(const EquilibriumSolution& sol, std::size_t n,
                                    std::uint64_t rng_seed) {
    if (n == 0) throw std::invalid_argument("n: must be >= 1");
    SimulationReport report;
    report.sample_count = n;
    double sum = 0.0;
    double sum_sq = 0.0;
    std::size_t first_count = 0;
    for (std::size_t round = 0; round < n; ++round) {
        SplitMix64 rng0 = substream(rng_seed, round, 0);
        SplitMix64 rng1 = substream(rng_seed, round, 1);
        const Action a0 = sample_action_with(sol, rng0);
        const Action a1 = sample_action_with(sol, rng1);
        TieWinner winner = TieWinner::Me;
        const bool tie = a0.trades && a1.trades && a0.gas_fee == a1.gas_fee;
        if (tie) {
            ++report.tie_count;
            winner = substream(rng_seed, round, 2).uniform01() < 0.5 ? TieWinner::Me
                                                                     : TieWinner::Them;
        }
        const double payoff = pure_payoff(sol.market, a0, a1, winner);
        sum += payoff;
        sum_sq += payoff * payoff;
        if (a0.trades && (!a1.trades || a0.gas_fee > a1.gas_fee ||
                          (tie && winner == TieWinner::Me)))
            ++first_count;
    }
    const double count = static_cast<double>(n);
    report.mean_payoff = sum / count;
    if (n > 1) {
        const double variance =
            std::max(0.0, (sum_sq - count * report.mean_payoff * report.mean_payoff) /
                              (count - 1.0));
        report.std_error = std::sqrt(variance / count);
    }
    report.first_mover_fraction = static_cast<double>(first_count) / count;
    return report;
}

double best_deviation_gap(const EquilibriumSolution& sol, std::size_t gas_grid_size,
                          std::size_t amount_grid_size) {
    if (gas_grid_size < 2 || amount_grid_size < 2)
        throw std::invalid_argument("grid sizes must be >= 2");
    const std::vector<double> gas =
        linspace(sol.market.base_gas_fee, sol.derived.max_gas_fee, gas_grid_size);
    const std::vector<double> amounts =
        linspace(0.0, sol.derived.optimal_amount, amount_grid_size);
    const double value = std::max(sol.derived.max_gas_fee - sol.g_h, 0.0);

    double best = response_h(sol, sol.g_h, sol.derived.optimal_amount);
    for (const double g : gas) {
        const bool in_support = g <= sol.g_h;
        for (const double d : amounts) {
            const double h = in_support ? response_h(sol, g, d)
                                        : first_mover_profit(sol.market, g, d);
            best = std::max(best, h);
        }
    }
    return std::max(0.0, best - value);
}

FictitiousPlayResult discretized_game_oracle(const MarketParams& market,
                                             std::size_t gas_levels,
                                             std::size_t amount_levels,
                                             std::size_t iterations,
                                             std::uint64_t rng_seed) {
    validate(market);
    if (gas_levels < 5 || amount_levels < 5)
        throw std::invalid_argument("levels: must be >= 5");
    if (iterations == 0) throw std::invalid_argument("iterations: must be >= 1");
    const DerivedQuantities dq = derived_quantities(market);
    if (!(dq.opportunity > 1.0 && dq.opportunity <= 3.0))
        throw UnsupportedOpportunityError("oracle requires an opportunity in (1, 3], got " +
                                          std::to_string(dq.opportunity));
    if (!(dq.max_gas_fee > market.base_gas_fee))
        throw NoTradeError("max_gas_fee <= base_gas_fee: the discretized game is trivial");

    FictitiousPlayResult result;
    result.gas_levels = linspace(market.base_gas_fee, dq.max_gas_fee, gas_levels);
    result.amount_levels = linspace(0.0, dq.optimal_amount, amount_levels);
    const std::vector<double>& gas = result.gas_levels;
    const std::vector<double>& amt = result.amount_levels;

    std::vector<double> rf(gas_levels * amount_levels);
    for (std::size_t i = 0; i < gas_levels; ++i)
        for (std::size_t j = 0; j < amount_levels; ++j)
            rf[i * amount_levels + j] = first_mover_profit(market, gas[i], amt[j]);

    // V(d, d_bar), symmetric, 0 on either axis.
    std::vector<double> adv(amount_levels * amount_levels, 0.0);
    for (std::size_t j = 0; j < amount_levels; ++j)
        for (std::size_t l = 0; l < amount_levels; ++l)
            if (amt[j] > 0.0 && amt[l] > 0.0)
                adv[j * amount_levels + l] = first_mover_advantage(market, amt[j], amt[l]);

    // Action 0 is no-trade; trading action (i, j) sits at 1 + i*amount_levels + j.
    const std::size_t n_actions = 1 + gas_levels * amount_levels;
    std::vector<double> util(n_actions, 0.0);
    std::vector<double> counts(n_actions, 0.0);
    SplitMix64 rng(mix64(rng_seed));

    for (std::size_t t = 0; t < iterations; ++t) {
        const std::size_t play = argmax_random_ties(util, rng);
        counts[play] += 1.0;
        if (play == 0) {
            for (std::size_t a = 1; a < n_actions; ++a) util[a] += rf[a - 1];
            continue;
        }
        const std::size_t gi = (play - 1) / amount_levels;
        const std::size_t dj = (play - 1) % amount_levels;
        const double* vrow = adv.data() + dj * amount_levels;  // V(., d_j) by symmetry
        double* u = util.data() + 1;
        const double* r = rf.data();
        for (std::size_t i = 0; i < gas_levels; ++i) {
            const double coef = i > gi ? 0.0 : (i == gi ? 0.5 : 1.0);
            if (coef == 0.0) {
                for (std::size_t j = 0; j < amount_levels; ++j) u[j] += r[j];
            } else {
                for (std::size_t j = 0; j < amount_levels; ++j)
                    u[j] += r[j] - coef * vrow[j];
            }
            u += amount_levels;
            r += amount_levels;
        }
    }

    const double total = static_cast<double>(iterations);
    result.gas_histogram.assign(gas_levels, 0.0);
    result.amount_histogram.assign(amount_levels, 0.0);
    double value = 0.0;
    double best_reply = 0.0;  // no-trade earns 0 against anything
    for (std::size_t a = 0; a < n_actions; ++a) {
        const double mass = counts[a] / total;
        const double reply_payoff = util[a] / total;
        value += mass * reply_payoff;
        best_reply = std::max(best_reply, reply_payoff);
        if (a == 0) continue;
        result.gas_histogram[(a - 1) / amount_levels] += mass;
        result.amount_histogram[(a - 1) % amount_levels] += mass;
    }
    result.trade_probability = 1.0 - counts[0] / total;
    result.value = value;
    result.regret = best_reply - value;
    return result;
}

std::vector<double> rebin_histogram(const std::vector<double>& marginal, std::size_t bins) {
    if (bins == 0 || bins > marginal.size())
        throw std::invalid_argument("bins: must lie in [1, marginal size]");
    std::vector<double> out(bins, 0.0);
    for (std::size_t i = 0; i < marginal.size(); ++i) {
        std::size_t b = i * bins / marginal.size();
        out[b] += marginal[i];
    }
    return out;
}

DenseFpResult fictitious_play_dense(const std::vector<double>& payoff, std::size_t n,
                                    std::size_t iterations, std::uint64_t rng_seed) {
    if (n == 0 || payoff.size() != n * n)
        throw std::invalid_argument("payoff: must be an n x n row-major matrix");
    if (iterations == 0) throw std::invalid_argument("iterations: must be >= 1");
    std::vector<double> util(n, 0.0);
    std::vector<double> counts(n, 0.0);
    SplitMix64 rng(mix64(rng_seed));
    for (std::size_t t = 0; t < iterations; ++t) {
        const std::size_t play = argmax_random_ties(util, rng);
        counts[play] += 1.0;
        for (std::size_t a = 0; a < n; ++a) util[a] += payoff[a * n + play];
    }
    DenseFpResult result;
    result.strategy.resize(n);
    double best_reply = util[0] / static_cast<double>(iterations);
    for (std::size_t a = 0; a < n; ++a) {
        result.strategy[a] = counts[a] / static_cast<double>(iterations);
        const double reply = util[a] / static_cast<double>(iterations);
        result.value += result.strategy[a] * reply;
        best_reply = std::max(best_reply, reply);
    }
    result.regret = best_reply - result.value;
    return result;
}

}  // namespace dexarb
