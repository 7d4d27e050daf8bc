#include "dexarb/market.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dexarb {

namespace {

[[noreturn]] void bad_field(const std::string& field, const std::string& why) {
    throw std::invalid_argument(field + ": " + why);
}

}  // namespace

void validate(const PoolState& pool) {
    if (!(std::isfinite(pool.reserve_a) && pool.reserve_a > 0.0))
        bad_field("reserve_a", "must be finite and > 0");
    if (!(std::isfinite(pool.reserve_b) && pool.reserve_b > 0.0))
        bad_field("reserve_b", "must be finite and > 0");
    if (!(std::isfinite(pool.fee_rate) && pool.fee_rate >= 0.0 && pool.fee_rate < 1.0))
        bad_field("fee_rate", "must lie in [0, 1)");
}

void validate(const MarketParams& market) {
    validate(market.pool);
    if (!(std::isfinite(market.price_a) && market.price_a > 0.0))
        bad_field("price_a", "must be finite and > 0");
    if (!(std::isfinite(market.price_b) && market.price_b > 0.0))
        bad_field("price_b", "must be finite and > 0");
    if (!(std::isfinite(market.base_gas_fee) && market.base_gas_fee >= 0.0))
        bad_field("base_gas_fee", "must be finite and >= 0");
}

double quote_delta_b(const PoolState& pool, double d_a) {
    if (!(std::isfinite(d_a) && d_a > 0.0))
        throw std::invalid_argument("d_a: must be finite and > 0");
    return -pool.reserve_b / (pool.reserve_a / d_a + 1.0);
}

PoolState apply_trade(const PoolState& pool, double d_a) {
    if (!(std::isfinite(d_a) && d_a > -pool.reserve_a))
        throw std::invalid_argument("d_a: must be finite and > -reserve_a");
    PoolState next = pool;
    next.reserve_a = pool.reserve_a + d_a;
    next.reserve_b = pool.reserve_a * pool.reserve_b / (pool.reserve_a + d_a);
    return next;
}

double net_profit(const MarketParams& market, double d_a, double gas_fee) {
    const PoolState& pool = market.pool;
    if (!(std::isfinite(d_a) && d_a > -pool.reserve_a))
        throw std::invalid_argument("d_a: must be finite and > -reserve_a");
    // Same quantity as quote_delta_b but stable for d_a of either sign.
    const double d_b = -pool.reserve_b * d_a / (pool.reserve_a + d_a);
    const double fee_a = d_a > 0.0 ? pool.fee_rate : 0.0;
    const double fee_b = d_b > 0.0 ? pool.fee_rate : 0.0;
    return -(1.0 + fee_a) * d_a * market.price_a - (1.0 + fee_b) * d_b * market.price_b -
           gas_fee;
}

DerivedQuantities derived_quantities(const MarketParams& market) {
    const PoolState& pool = market.pool;
    DerivedQuantities d;
    d.liquidity_b = pool.reserve_b * market.price_b;
    d.opportunity = d.liquidity_b / (pool.reserve_a * market.price_a * (1.0 + pool.fee_rate));
    if (d.opportunity > 1.0) {
        const double root = std::sqrt(d.opportunity);
        d.optimal_amount = (root - 1.0) * pool.reserve_a;
        d.max_gas_fee = d.liquidity_b * (1.0 - 1.0 / root) * (1.0 - 1.0 / root);
    }
    return d;
}

double first_mover_profit(const MarketParams& market, double gas_fee, double d_a) {
    const PoolState& pool = market.pool;
    return d_a * (pool.reserve_b * market.price_b / (pool.reserve_a + d_a) -
                  (1.0 + pool.fee_rate) * market.price_a) -
           gas_fee;
}

double first_mover_advantage(const MarketParams& market, double d_a, double d_bar) {
    if (!(std::isfinite(d_a) && d_a > 0.0))
        throw std::invalid_argument("d_a: must be finite and > 0");
    if (!(std::isfinite(d_bar) && d_bar > 0.0))
        throw std::invalid_argument("d_bar: must be finite and > 0");
    const double y_a = market.pool.reserve_a;
    const double frac_first = d_a / (y_a + d_a);
    const double frac_second = d_a * y_a / ((y_a + d_bar) * (y_a + d_bar + d_a));
    return (frac_first - frac_second) * market.pool.reserve_b * market.price_b;
}

double second_mover_profit(const MarketParams& market, double gas_fee, double d_a,
                           double d_bar) {
    // V vanishes as either trade goes to 0.
    const double advantage =
        (d_a > 0.0 && d_bar > 0.0) ? first_mover_advantage(market, d_a, d_bar) : 0.0;
    return first_mover_profit(market, gas_fee, d_a) - advantage;
}

}  // namespace dexarb
