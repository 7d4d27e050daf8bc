#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dexarb/equilibrium.hpp"
#include "dexarb/market.hpp"

namespace dexarb {

/// One arbitrageur's move: stay out, or trade `amount` at `gas_fee`.
struct Action {
    bool trades = false;
    double gas_fee = 0.0;
    double amount = 0.0;
};

enum class TieWinner { Me, Them };

/// Realized payoff under the execution-order rule: first mover is the higher
/// gas fee; an exact tie is broken by `tie_winner` (the caller's coin flip).
double pure_payoff(const MarketParams& market, const Action& mine, const Action& theirs,
                   TieWinner tie_winner);

/// Draw one action from the equilibrium strategy: Bernoulli(alpha*) trade
/// decision, gas fee by inverting the path's cumulative v-mass, amount =
/// d_star(gas fee). Deterministic for a given seed. The gas draw inverts the
/// path-derived mass, so a corrupted alpha_star field still yields a valid
/// conditional distribution.
Action sample_action(const EquilibriumSolution& sol, std::uint64_t rng_seed);

struct SimulationReport {
    std::size_t sample_count = 0;
    double mean_payoff = 0.0;
    double std_error = 0.0;
    std::size_t tie_count = 0;
    /// Share of games in which player 0 traded and executed first
    /// (uncontested trades count as first).
    double first_mover_fraction = 0.0;
};

/// Simulate n independent games with both players on the equilibrium
/// strategy; substreams per (round, player) follow the rule in rng.hpp, so
/// identical seeds are bit-reproducible.
SimulationReport monte_carlo_payoff(const EquilibriumSolution& sol, std::size_t n,
                                    std::uint64_t rng_seed);

/// Largest response-function advantage of any pure deviation on a gas x
/// amount grid over the equilibrium value max(max_gas_fee - g_h, 0). Gas
/// points above g_h face an empty upper integral. The exact optimum
/// (g_h, optimal_amount) is always included, so the gap is never negative.
double best_deviation_gap(const EquilibriumSolution& sol, std::size_t gas_grid_size,
                          std::size_t amount_grid_size);

/// Time-averaged strategy of symmetric fictitious play on the discretized
/// game, with its exploitability.
struct FictitiousPlayResult {
    double trade_probability = 0.0;
    double value = 0.0;   // payoff of the averaged strategy against itself
    double regret = 0.0;  // best response payoff minus value
    std::vector<double> gas_levels;
    std::vector<double> amount_levels;
    std::vector<double> gas_histogram;     // mass per gas level, sums to trade_probability
    std::vector<double> amount_histogram;  // mass per amount level
};

/// Independent equilibrium oracle: build the finite symmetric game (no-trade
/// plus a gas x amount grid, ties averaged 1/2-1/2 analytically) and run
/// fictitious play. The seed only breaks exact best-response ties.
FictitiousPlayResult discretized_game_oracle(const MarketParams& market,
                                             std::size_t gas_levels,
                                             std::size_t amount_levels,
                                             std::size_t iterations,
                                             std::uint64_t rng_seed);

/// Aggregate a fine level-marginal into `bins` equal-width bins; used to test
/// histogram monotonicity above the sampling noise of individual levels.
std::vector<double> rebin_histogram(const std::vector<double>& marginal, std::size_t bins);

/// Dense-matrix fictitious play for small symmetric games (row payoff
/// row-major, n x n); the reusable core behind the oracle's convergence tests.
struct DenseFpResult {
    std::vector<double> strategy;
    double value = 0.0;
    double regret = 0.0;
};
DenseFpResult fictitious_play_dense(const std::vector<double>& payoff, std::size_t n,
                                    std::size_t iterations, std::uint64_t rng_seed);

}  // namespace dexarb
