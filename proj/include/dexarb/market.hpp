#pragma once

namespace dexarb {

/// Reserves and proportional fee of a constant-product pool.
/// Invariants: reserve_a > 0, reserve_b > 0, fee_rate in [0, 1).
struct PoolState {
    double reserve_a = 0.0;
    double reserve_b = 0.0;
    double fee_rate = 0.0;
};

/// A pool together with the external (CEX) quotes and the mandatory base gas
/// fee. Prices and gas fees are in USD; token amounts are reals.
struct MarketParams {
    PoolState pool;
    double price_a = 0.0;
    double price_b = 0.0;
    double base_gas_fee = 0.0;
};

/// Closed-form quantities of a market. `opportunity` > 1 signals a profitable
/// deposit of asset A; `optimal_amount` and `max_gas_fee` are clamped to 0
/// when there is no opportunity, so non-arbitrage blocks remain evaluable.
struct DerivedQuantities {
    double liquidity_b = 0.0;     // reserve_b * price_b
    double opportunity = 0.0;     // liquidity_b / (reserve_a * price_a * (1 + fee))
    double optimal_amount = 0.0;  // deposit of A maximizing the first-mover profit
    double max_gas_fee = 0.0;     // gas fee at which the first mover breaks even
};

/// Tolerances shared by the library's consistency checks and the test suites.
struct NumericTolerances {
    double product_conservation_rel = 1e-12;
    double payoff_consistency_rel = 1e-10;
    double advantage_symmetry_rel = 1e-10;
    double break_even_abs_per_liquidity = 1e-8;
    double kernel_oracle_rel = 1e-5;
    double fd_step_per_reserve_a = 1e-6;
};

/// Throw std::invalid_argument naming the offending field.
void validate(const PoolState& pool);
void validate(const MarketParams& market);

/// Amount of B leaving the pool (negative) when d_a > 0 of A is deposited.
/// The post-trade reserve product equals the pre-trade product exactly.
double quote_delta_b(const PoolState& pool, double d_a);

/// Pool after depositing d_a of A (d_a > -reserve_a; withdrawals allowed).
/// The trading fee is paid to LPs directly and never enters the reserves.
PoolState apply_trade(const PoolState& pool, double d_a);

/// Net USD profit of trading d_a on the pool and unwinding on the CEX, gas
/// included. Fees apply to whichever leg is a deposit; d_a may have either sign.
double net_profit(const MarketParams& market, double d_a, double gas_fee);

DerivedQuantities derived_quantities(const MarketParams& market);

/// Profit when the trade executes against the untouched pool.
double first_mover_profit(const MarketParams& market, double gas_fee, double d_a);

/// Profit gap between executing d_a before versus after a competing deposit
/// d_bar. Strictly positive and symmetric in (d_a, d_bar).
double first_mover_advantage(const MarketParams& market, double d_a, double d_bar);

/// Profit when a competing deposit d_bar executes first.
double second_mover_profit(const MarketParams& market, double gas_fee, double d_a,
                           double d_bar);

}  // namespace dexarb
