#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "dexarb/equilibrium.hpp"
#include "dexarb/market.hpp"
#include "dexarb/rng.hpp"

namespace testsupport {

// y_A=1000, y_B=4e6, p_A=2000, p_B=1, f=0: L_B = 4e6, O = 2,
// optimal amount ~ 414.2136, break-even fee ~ 343145.75.
inline dexarb::MarketParams o2_market(double base_gas_fee = 5.0) {
    dexarb::MarketParams market;
    market.pool = {1000.0, 4'000'000.0, 0.0};
    market.price_a = 2000.0;
    market.price_b = 1.0;
    market.base_gas_fee = base_gas_fee;
    return market;
}

// Partial-participation companion of the O=2 reference (alpha* ~ 0.876).
inline dexarb::MarketParams o2_partial_market() { return o2_market(50'000.0); }

// Random market with a prescribed opportunity range; deterministic in rng.
inline dexarb::MarketParams random_market(dexarb::SplitMix64& rng, double o_min = 1.02,
                                          double o_max = 3.0) {
    const double o = o_min + (o_max - o_min) * rng.uniform01();
    const double liquidity = std::pow(10.0, 5.0 + 3.0 * rng.uniform01());
    const double reserve_a = std::pow(10.0, 1.0 + 4.0 * rng.uniform01());
    const double price_b = 0.5 + 1.5 * rng.uniform01();
    const double fee = rng.uniform01() < 0.5 ? 0.0 : 0.003;
    dexarb::MarketParams market;
    market.pool.reserve_a = reserve_a;
    market.pool.reserve_b = liquidity / price_b;
    market.pool.fee_rate = fee;
    market.price_b = price_b;
    market.price_a = liquidity / (o * reserve_a * (1.0 + fee));
    market.base_gas_fee = 0.0;
    return market;
}

// Brute-force argmax of the first-mover profit over an amount grid;
// independent of the closed forms it checks.
struct GridMax {
    double best_amount = 0.0;
    double best_profit = 0.0;
};
inline GridMax grid_maximize_first_mover(const dexarb::MarketParams& market,
                                         std::size_t points) {
    GridMax out;
    const double hi = market.pool.reserve_a;  // optimum is below (sqrt(3)-1) y_A
    for (std::size_t i = 0; i <= points; ++i) {
        const double d = hi * static_cast<double>(i) / static_cast<double>(points);
        const double profit = dexarb::first_mover_profit(market, 0.0, d);
        if (profit > out.best_profit) {
            out.best_profit = profit;
            out.best_amount = d;
        }
    }
    return out;
}

// Second-mover profit by simulating the competitor's trade on the pool first.
inline double sequential_second_mover(const dexarb::MarketParams& market, double gas_fee,
                                      double d_a, double d_bar) {
    dexarb::MarketParams shifted = market;
    shifted.pool = dexarb::apply_trade(market.pool, d_bar);
    return dexarb::net_profit(shifted, d_a, gas_fee);
}

inline double rel_diff(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
}

}  // namespace testsupport
