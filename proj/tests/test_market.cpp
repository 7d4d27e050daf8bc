#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "dexarb/equilibrium.hpp"
#include "dexarb/market.hpp"
#include "dexarb/rng.hpp"
#include "test_support.hpp"

using namespace dexarb;
using namespace testsupport;

TEST_CASE("pool and market validation names the offending field") {
    PoolState pool{1000.0, 4e6, 0.0};
    CHECK_NOTHROW(validate(pool));
    pool.reserve_a = 0.0;
    CHECK_THROWS_WITH_AS(validate(pool), "reserve_a: must be finite and > 0",
                         std::invalid_argument);
    pool = {1000.0, 4e6, 1.0};
    CHECK_THROWS_AS(validate(pool), std::invalid_argument);

    MarketParams market = o2_market();
    CHECK_NOTHROW(validate(market));
    market.price_b = -1.0;
    CHECK_THROWS_WITH_AS(validate(market), "price_b: must be finite and > 0",
                         std::invalid_argument);
    market = o2_market();
    market.base_gas_fee = -0.5;
    CHECK_THROWS_AS(validate(market), std::invalid_argument);
}

TEST_CASE("quote_delta_b matches the constant-product rule") {
    const PoolState symmetric{100.0, 100.0, 0.0};
    CHECK(quote_delta_b(symmetric, 100.0) == doctest::Approx(-50.0).epsilon(1e-14));

    const PoolState pool{1000.0, 4e6, 0.0};
    CHECK(std::abs(quote_delta_b(pool, 414.2136) - (-1'171'572.9)) < 0.1);
    CHECK(quote_delta_b(pool, 1000.0) == doctest::Approx(-2e6).epsilon(1e-14));

    // product invariant at random sizes
    SplitMix64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const double d_a = pool.reserve_a * std::pow(10.0, -3.0 + 4.0 * rng.uniform01());
        const double d_b = quote_delta_b(pool, d_a);
        const double before = pool.reserve_a * pool.reserve_b;
        const double after = (pool.reserve_a + d_a) * (pool.reserve_b + d_b);
        CHECK(std::abs(after - before) <= 1e-12 * before);
    }

    CHECK_THROWS_AS(quote_delta_b(pool, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(quote_delta_b(pool, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(quote_delta_b(pool, std::nan("")), std::invalid_argument);
}

TEST_CASE("apply_trade moves reserves along the product curve") {
    const PoolState pool{1000.0, 4e6, 0.0};
    const PoolState after = apply_trade(pool, 100.0);
    CHECK(after.reserve_a == doctest::Approx(1100.0));
    CHECK(after.reserve_b == doctest::Approx(3'636'363.64).epsilon(1e-9));

    const PoolState same = apply_trade(pool, 0.0);
    CHECK(same.reserve_a == pool.reserve_a);
    CHECK(same.reserve_b == pool.reserve_b);

    const PoolState sym = apply_trade({100.0, 100.0, 0.0}, 100.0);
    CHECK(sym.reserve_a == doctest::Approx(200.0));
    CHECK(sym.reserve_b == doctest::Approx(50.0));

    CHECK_THROWS_AS(apply_trade(pool, -1000.0), std::invalid_argument);

    SplitMix64 rng(12);
    for (int i = 0; i < 500; ++i) {
        const MarketParams market = random_market(rng);
        const double span = market.pool.reserve_a;
        const double d_a = -0.9 * span + 3.0 * span * rng.uniform01();
        const PoolState next = apply_trade(market.pool, d_a);
        const double before = market.pool.reserve_a * market.pool.reserve_b;
        const double product = next.reserve_a * next.reserve_b;
        CHECK(std::abs(product - before) <= 1e-12 * before);
    }
}

TEST_CASE("net_profit prices both legs and the gas fee") {
    const MarketParams market = o2_market(0.0);
    CHECK(net_profit(market, 0.0, 3.0) == doctest::Approx(-3.0));
    CHECK(net_profit(market, 100.0, 0.0) == doctest::Approx(163'636.36).epsilon(1e-7));

    // the best amount's value, checked against brute-force maximization
    const GridMax grid = grid_maximize_first_mover(market, 100'000);
    CHECK(std::abs(net_profit(market, 414.2136, 0.0) - 343'145.75) < 0.5);
    CHECK(std::abs(grid.best_profit - 343'145.75) < 0.5);

    CHECK_THROWS_AS(net_profit(market, -1000.0, 0.0), std::invalid_argument);

    // withdrawal branch: acquiring A costs B, and the fee lands on the B leg
    MarketParams taxed = o2_market(0.0);
    taxed.pool.fee_rate = 0.003;
    const double d_a = -100.0;
    const double d_b = taxed.pool.reserve_a * taxed.pool.reserve_b /
                           (taxed.pool.reserve_a + d_a) -
                       taxed.pool.reserve_b;
    REQUIRE(d_b > 0.0);
    const double expected =
        -d_a * taxed.price_a - 1.003 * d_b * taxed.price_b - 7.0;
    CHECK(net_profit(taxed, d_a, 7.0) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("derived_quantities closed forms agree with grid maximization") {
    const MarketParams market = o2_market(0.0);
    const DerivedQuantities d = derived_quantities(market);
    CHECK(d.liquidity_b == doctest::Approx(4e6));
    CHECK(d.opportunity == doctest::Approx(2.0));
    CHECK(d.optimal_amount == doctest::Approx(414.2136).epsilon(1e-6));
    CHECK(d.max_gas_fee == doctest::Approx(343'145.75).epsilon(1e-7));

    const GridMax grid = grid_maximize_first_mover(market, 100'000);
    CHECK(std::abs(grid.best_amount - d.optimal_amount) <= 1e-3 * market.pool.reserve_a);
    CHECK(std::abs(grid.best_profit - d.max_gas_fee) <= 1e-5 * d.max_gas_fee);
}

TEST_CASE("derived_quantities clamps outside the no-trade band") {
    MarketParams market;
    market.pool = {1000.0, 2'500'000.0, 0.25};
    market.price_a = 2000.0;
    market.price_b = 1.0;  // y_B p_B == y_A p_A (1+f): O = 1 exactly
    market.base_gas_fee = 0.0;
    const DerivedQuantities d = derived_quantities(market);
    CHECK(d.opportunity == doctest::Approx(1.0));
    CHECK(d.optimal_amount == 0.0);
    CHECK(d.max_gas_fee == 0.0);

    market.pool.reserve_b = 2'000'000.0;  // O < 1, still valid input
    const DerivedQuantities low = derived_quantities(market);
    CHECK(low.opportunity < 1.0);
    CHECK(low.optimal_amount == 0.0);
    CHECK(low.max_gas_fee == 0.0);
}

TEST_CASE("production-scale defaults are a valid configuration") {
    MarketParams market;
    market.pool = {10'000.0, 48'033'495.0, 0.003};
    market.price_a = 48'033'495.0 / (1.5 * 10'000.0 * 1.003);
    market.price_b = 1.0;
    market.base_gas_fee = 5.0;
    CHECK_NOTHROW(validate(market));
    const DerivedQuantities d = derived_quantities(market);
    CHECK(d.liquidity_b == doctest::Approx(48'033'495.0));
    CHECK(d.opportunity == doctest::Approx(1.5));
    CHECK(d.max_gas_fee > market.base_gas_fee);
}

TEST_CASE("first_mover_profit closed form") {
    const MarketParams market = o2_market(0.0);
    const DerivedQuantities d = derived_quantities(market);
    // break-even at the top of the fee range
    CHECK(std::abs(first_mover_profit(market, d.max_gas_fee, d.optimal_amount)) <=
          1e-8 * d.liquidity_b);
    CHECK(first_mover_profit(market, 7.5, 0.0) == doctest::Approx(-7.5));
    CHECK(first_mover_profit(market, 1000.0, 200.0) ==
          doctest::Approx(265'666.67).epsilon(1e-7));

    // agrees with net_profit on the deposit-A branch, fee included
    SplitMix64 rng(13);
    for (int i = 0; i < 300; ++i) {
        const MarketParams m = random_market(rng);
        const double d_a = m.pool.reserve_a * rng.uniform01();
        if (d_a <= 0.0) continue;
        const double gas = 100.0 * rng.uniform01();
        CHECK(rel_diff(first_mover_profit(m, gas, d_a), net_profit(m, d_a, gas)) <= 1e-10);
    }
}

TEST_CASE("first_mover_advantage is positive, symmetric, and matches simulation") {
    const MarketParams market = o2_market(0.0);
    CHECK(first_mover_advantage(market, 100.0, 100.0) ==
          doctest::Approx(60'606.06).epsilon(1e-7));

    // oracle: first-mover profit minus the sequential-pool second-mover profit
    const double oracle = first_mover_profit(market, 0.0, 100.0) -
                          sequential_second_mover(market, 0.0, 100.0, 100.0);
    CHECK(rel_diff(first_mover_advantage(market, 100.0, 100.0), oracle) <= 1e-10);

    CHECK(rel_diff(first_mover_advantage(market, 100.0, 200.0),
                   first_mover_advantage(market, 200.0, 100.0)) <= 1e-10);

    SplitMix64 rng(14);
    for (int i = 0; i < 1000; ++i) {
        const MarketParams m = random_market(rng);
        const double lo = 1e-6 * m.pool.reserve_a;
        const double d1 = lo + m.pool.reserve_a * rng.uniform01();
        const double d2 = lo + m.pool.reserve_a * rng.uniform01();
        const double v12 = first_mover_advantage(m, d1, d2);
        CHECK(v12 > 0.0);
        CHECK(std::abs(v12 - first_mover_advantage(m, d2, d1)) <= 1e-10 * v12);
    }

    CHECK_THROWS_AS(first_mover_advantage(market, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(first_mover_advantage(market, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("second_mover_profit equals the sequential-pool simulation") {
    const MarketParams market = o2_market(0.0);
    CHECK(second_mover_profit(market, 0.0, 100.0, 100.0) ==
          doctest::Approx(103'030.30).epsilon(1e-7));

    SplitMix64 rng(15);
    for (int i = 0; i < 1000; ++i) {
        const MarketParams m = random_market(rng);
        const double d1 = 1e-3 + m.pool.reserve_a * rng.uniform01();
        const double d2 = 1e-3 + m.pool.reserve_a * rng.uniform01();
        const double gas = 50.0 * rng.uniform01();
        const double formula = second_mover_profit(m, gas, d1, d2);
        const double simulated = sequential_second_mover(m, gas, d1, d2);
        CHECK(rel_diff(formula, simulated) <= 1e-10);
        CHECK(formula < first_mover_profit(m, gas, d1));
    }

    // vanishing front-run restores the first-mover profit
    CHECK(second_mover_profit(market, 3.0, 100.0, 0.0) ==
          first_mover_profit(market, 3.0, 100.0));
}

TEST_CASE("first-mover profit is strictly concave in the amount") {
    const MarketParams market = o2_market(0.0);
    const double top = 1.5 * derived_quantities(market).optimal_amount;
    double prev_diff = 0.0;
    bool have_prev = false;
    for (int i = 0; i + 1 <= 64; ++i) {
        const double a = top * i / 64.0;
        const double b = top * (i + 1) / 64.0;
        const double diff = first_mover_profit(market, 0.0, b) -
                            first_mover_profit(market, 0.0, a);
        if (have_prev) CHECK(diff < prev_diff);
        prev_diff = diff;
        have_prev = true;
    }
}

TEST_CASE("analytic amount derivative matches finite differences and q_hat") {
    SplitMix64 rng(16);
    const NumericTolerances tol;
    for (int i = 0; i < 200; ++i) {
        const MarketParams m = random_market(rng);
        const DerivedQuantities dq = derived_quantities(m);
        const double y_a = m.pool.reserve_a;
        const double x = 1e-3 + (std::sqrt(dq.opportunity) - 1.0 - 2e-3) * rng.uniform01();
        const double step = tol.fd_step_per_reserve_a * y_a;
        const double fd = (first_mover_profit(m, 0.0, x * y_a + step) -
                           first_mover_profit(m, 0.0, x * y_a - step)) /
                          (2.0 * step);
        const double scaled = y_a / dq.liquidity_b * fd;
        CHECK(std::abs(scaled - q_hat(x, dq.opportunity)) <=
              1e-6 * std::max(1.0, std::abs(q_hat(x, dq.opportunity))));
    }
}
