// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances and runtime budgets are fixed here, not configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "dexarb/empirics.hpp"
#include "dexarb/equilibrium.hpp"
#include "dexarb/game.hpp"
#include "dexarb/market.hpp"
#include "dexarb/rng.hpp"
#include "dexarb/serialize.hpp"
#include "dexarb/statics.hpp"
#include "fixture_support.hpp"
#include "test_support.hpp"

using namespace dexarb;
using testsupport::o2_market;
using testsupport::o2_partial_market;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
    void note(const std::string& text) {
        if (!detail.empty()) detail += "; ";
        detail += text;
    }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.3g", value);
    return buffer;
}

Outcome criterion_break_even() {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    SplitMix64 rng(101);
    double worst_even = 0.0, worst_amount = 0.0, worst_fee = 0.0;
    for (int i = 0; i < 50; ++i) {
        const MarketParams market = testsupport::random_market(rng);
        const DerivedQuantities dq = derived_quantities(market);
        const double even =
            std::abs(first_mover_profit(market, dq.max_gas_fee, dq.optimal_amount)) /
            dq.liquidity_b;
        worst_even = std::max(worst_even, even);

        const testsupport::GridMax grid =
            testsupport::grid_maximize_first_mover(market, 100'000);
        worst_amount = std::max(worst_amount, std::abs(grid.best_amount - dq.optimal_amount) /
                                                  market.pool.reserve_a);
        worst_fee = std::max(worst_fee,
                             std::abs(grid.best_profit - dq.max_gas_fee) / dq.max_gas_fee);
    }
    const double elapsed = seconds_since(start);
    out.require(worst_even <= 1e-8, "break-even residual " + fmt(worst_even));
    out.require(worst_amount <= 1e-3, "amount recovery " + fmt(worst_amount));
    out.require(worst_fee <= 1e-5, "fee recovery " + fmt(worst_fee));
    out.require(elapsed < 5.0, "runtime " + fmt(elapsed) + "s");
    out.note("worst residual " + fmt(worst_even) + " of L_B, amount err " +
             fmt(worst_amount) + " of y_A, fee err " + fmt(worst_fee) + ", " +
             fmt(elapsed) + "s");
    return out;
}

Outcome criterion_path_residual() {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    for (const double o : {1.2, 2.0, 3.0}) {
        const XhatPath path = solve_xhat(o);
        out.require(path.x.front() == std::sqrt(o) - 1.0,
                    "x(0) not exact at O=" + fmt(o));
        bool decreasing = true;
        for (std::size_t i = 1; i < path.size(); ++i)
            if (!(path.x[i] < path.x[i - 1])) decreasing = false;
        out.require(decreasing, "x not strictly decreasing at O=" + fmt(o));
        const double residual = max_residual_fine_requadrature(path);
        out.require(residual <= 1e-7,
                    "fine residual " + fmt(residual) + " at O=" + fmt(o));
        out.note("O=" + fmt(o) + " residual " + fmt(residual));
    }
    const double elapsed = seconds_since(start);
    out.require(elapsed < 30.0, "runtime " + fmt(elapsed) + "s");
    out.note(fmt(elapsed) + "s");
    return out;
}

Outcome criterion_flatness_and_gap() {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    for (const MarketParams& market : {o2_market(5.0), o2_partial_market()}) {
        const EquilibriumSolution sol = solve_equilibrium(market);
        const char* tag =
            sol.case_tag == CaseTag::FullParticipation ? "full" : "partial";
        const double value = sol.derived.max_gas_fee - sol.g_h;
        const double tolerance =
            1e-4 * std::max(sol.derived.max_gas_fee, sol.derived.liquidity_b * 1e-6);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double g = market.base_gas_fee +
                             (sol.g_h - market.base_gas_fee) * i / 99.0;
            worst = std::max(worst,
                             std::abs(response_h(sol, g, d_star(sol, g)) - value));
        }
        out.require(worst <= tolerance, std::string(tag) + " flatness " + fmt(worst));
        const double gap = best_deviation_gap(sol, 200, 200);
        out.require(gap <= 1e-3 * sol.derived.max_gas_fee,
                    std::string(tag) + " gap " + fmt(gap));
        out.note(std::string(tag) + ": flatness " + fmt(worst) + ", gap " + fmt(gap));
    }
    const double elapsed = seconds_since(start);
    out.require(elapsed < 60.0, "runtime " + fmt(elapsed) + "s");
    out.note(fmt(elapsed) + "s");
    return out;
}

Outcome criterion_case_boundary() {
    Outcome out;
    const EquilibriumSolution probe = solve_equilibrium(o2_market(5.0));
    const double fee_scale = probe.derived.max_gas_fee;
    const double boundary = fee_scale - probe.derived.liquidity_b * probe.z_hat;
    const double nudge = 1e-7 * fee_scale;
    const EquilibriumSolution below = solve_equilibrium(o2_market(boundary - nudge));
    const EquilibriumSolution above = solve_equilibrium(o2_market(boundary + nudge));
    out.require(below.case_tag == CaseTag::FullParticipation, "below boundary not full");
    out.require(above.case_tag == CaseTag::PartialParticipation,
                "above boundary not partial");
    const double alpha_jump = std::abs(below.alpha_star - above.alpha_star);
    const double profit_jump = std::abs(below.expected_profit - above.expected_profit);
    out.require(alpha_jump <= 1e-6, "alpha jump " + fmt(alpha_jump));
    out.require(profit_jump <= 1e-6 * fee_scale, "profit jump " + fmt(profit_jump));
    out.note("alpha jump " + fmt(alpha_jump) + ", profit jump " + fmt(profit_jump));
    return out;
}

Outcome criterion_monte_carlo() {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    for (const MarketParams& market : {o2_market(5.0), o2_partial_market()}) {
        const EquilibriumSolution sol = solve_equilibrium(market);
        const char* tag =
            sol.case_tag == CaseTag::FullParticipation ? "full" : "partial";
        const SimulationReport mc = monte_carlo_payoff(sol, 100'000, 20260808);
        const double analytic = expected_profit(sol);
        const double sigmas = std::abs(mc.mean_payoff - analytic) /
                              (mc.std_error > 0.0 ? mc.std_error : 1.0);
        out.require(sigmas <= 3.0, std::string(tag) + " deviation " + fmt(sigmas) + " se");
        if (sol.case_tag == CaseTag::PartialParticipation)
            out.require(std::abs(mc.mean_payoff) <= 3.0 * mc.std_error,
                        "partial mean not within 3 se of zero");
        out.note(std::string(tag) + ": mean " + fmt(mc.mean_payoff) + " vs " +
                 fmt(analytic) + " (" + fmt(sigmas) + " se)");
    }
    const double elapsed = seconds_since(start);
    out.require(elapsed < 30.0, "runtime " + fmt(elapsed) + "s");
    out.note(fmt(elapsed) + "s");
    return out;
}

Outcome criterion_oracle() {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    const MarketParams market = o2_partial_market();
    const EquilibriumSolution sol = solve_equilibrium(market);
    const FictitiousPlayResult fp = discretized_game_oracle(market, 101, 51, 100'000, 7);
    const double gap = std::abs(fp.trade_probability - sol.alpha_star);
    out.require(gap <= 0.05, "trade probability off by " + fmt(gap));
    const std::vector<double> binned = rebin_histogram(fp.gas_histogram, 10);
    bool decreasing = true;
    for (std::size_t i = 1; i < binned.size(); ++i)
        if (!(binned[i] < binned[i - 1])) decreasing = false;
    out.require(decreasing, "binned gas histogram not decreasing");
    const double elapsed = seconds_since(start);
    out.require(elapsed < 300.0, "runtime " + fmt(elapsed) + "s");
    out.note("trade prob " + fmt(fp.trade_probability) + " vs alpha " +
             fmt(sol.alpha_star) + ", regret " + fmt(fp.regret) + ", " + fmt(elapsed) +
             "s");
    return out;
}

Outcome criterion_support_margin() {
    Outcome out;
    std::vector<double> grid;
    for (int i = 11; i <= 30; ++i) grid.push_back(i / 10.0);
    const FigureData data = figure_data(grid, o2_market(5.0));
    double prev = 0.0;
    for (std::size_t i = 0; i < data.rows.size(); ++i) {
        out.require(data.rows[i].ok, "row failed at O=" + fmt(grid[i]));
        if (!data.rows[i].ok) continue;
        out.require(data.support_margin[i] > 0.0, "margin not positive at O=" + fmt(grid[i]));
        out.require(data.support_margin[i] > prev,
                    "margin not increasing at O=" + fmt(grid[i]));
        prev = data.support_margin[i];
    }
    out.note("margin spans " + fmt(data.support_margin.front()) + " to " +
             fmt(data.support_margin.back()));
    return out;
}

Outcome criterion_statics_table() {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    const MarketParams base = o2_market(5.0);
    auto spec_for = [&](SweepParameter which, std::vector<double> grid,
                        const MarketParams& tmpl, double top_fee) {
        SweepSpec spec;
        spec.varying = which;
        spec.grid = std::move(grid);
        spec.base = tmpl;
        spec.gas_abscissae = ddf_abscissae(top_fee, 512);
        spec.amount_abscissae = ddf_abscissae(std::sqrt(3.0) - 1.0, 512);
        return spec;
    };
    auto equal_curves = [](const std::vector<double>& a, const std::vector<double>& b) {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (std::abs(a[i] - b[i]) > 1e-6) return false;
        return true;
    };
    auto fosd = [](const SweepSpec& spec, const SweepRow& low, const SweepRow& high,
                   bool amount) {
        const std::vector<double>& grid = amount ? spec.amount_abscissae : spec.gas_abscissae;
        return fosd_compare({grid, amount ? low.amount_ddf : low.gas_ddf},
                            {grid, amount ? high.amount_ddf : high.gas_ddf});
    };

    // base gas fee, full-participation regime
    {
        const SweepSpec spec = spec_for(SweepParameter::BaseGasFee,
                                        {5.0, 1000.0, 5000.0, 15000.0, 30000.0}, base,
                                        derived_quantities(base).max_gas_fee);
        const std::vector<SweepRow> rows = run_sweep(spec);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            out.require(rows[i].ok && rows[i].alpha_star == 1.0,
                        "cell 1: alpha at g_L=" + fmt(rows[i].parameter));
            if (i == 0) continue;
            out.require(rows[i].expected_profit < rows[i - 1].expected_profit &&
                            rows[i].expected_profit > 0.0,
                        "cell 2: profit ordering");
            out.require(fosd(spec, rows[i - 1], rows[i], false) == Dominance::Dominates,
                        "cell 3: gas fee FOSD in g_L (full)");
            out.require(equal_curves(rows[i].amount_ddf, rows[i - 1].amount_ddf),
                        "cell 4: amount DDF independence of g_L");
        }
    }
    // base gas fee, partial regime
    {
        const SweepSpec spec = spec_for(
            SweepParameter::BaseGasFee,
            {50'000.0, 100'000.0, 150'000.0, 200'000.0, 250'000.0}, base,
            derived_quantities(base).max_gas_fee);
        const std::vector<SweepRow> rows = run_sweep(spec);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            out.require(rows[i].ok && rows[i].alpha_star < 1.0 &&
                            rows[i].expected_profit == 0.0,
                        "cell 1/2: partial regime at g_L=" + fmt(rows[i].parameter));
            if (i == 0) continue;
            out.require(rows[i].alpha_star < rows[i - 1].alpha_star,
                        "cell 1: alpha decreasing in g_L");
            out.require(fosd(spec, rows[i - 1], rows[i], false) == Dominance::DominatedBy,
                        "cell 3: gas fee FOSD in g_L (partial)");
            out.require(fosd(spec, rows[i - 1], rows[i], true) == Dominance::DominatedBy,
                        "cell 4: amount FOSD in g_L (partial)");
        }
    }
    // liquidity, full regime
    {
        const double top = derived_quantities(
                               apply_parameter(base, SweepParameter::Liquidity, 1.6e7))
                               .max_gas_fee;
        const SweepSpec spec = spec_for(SweepParameter::Liquidity,
                                        {1e6, 2e6, 4e6, 8e6, 1.6e7}, base, top);
        const std::vector<SweepRow> rows = run_sweep(spec);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            out.require(rows[i].ok && rows[i].alpha_star == 1.0,
                        "cell 5: alpha at L_B=" + fmt(rows[i].parameter));
            if (i == 0) continue;
            out.require(rows[i].expected_profit > rows[i - 1].expected_profit,
                        "cell 6: profit increasing in L_B");
            out.require(fosd(spec, rows[i - 1], rows[i], false) == Dominance::Dominates,
                        "cell 7: gas fee FOSD in L_B (full)");
            out.require(equal_curves(rows[i].amount_ddf, rows[i - 1].amount_ddf),
                        "cell 8: amount DDF independence of L_B");
        }
    }
    // liquidity, partial regime
    {
        const MarketParams tight = o2_market(50'000.0);
        const double top = derived_quantities(
                               apply_parameter(tight, SweepParameter::Liquidity, 5e6))
                               .max_gas_fee;
        const SweepSpec spec =
            spec_for(SweepParameter::Liquidity, {1e6, 2e6, 3e6, 4e6, 5e6}, tight, top);
        const std::vector<SweepRow> rows = run_sweep(spec);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            out.require(rows[i].ok && rows[i].alpha_star < 1.0 &&
                            rows[i].expected_profit == 0.0,
                        "cell 5/6: partial regime at L_B=" + fmt(rows[i].parameter));
            if (i == 0) continue;
            out.require(rows[i].alpha_star > rows[i - 1].alpha_star,
                        "cell 5: alpha increasing in L_B");
            out.require(fosd(spec, rows[i - 1], rows[i], false) == Dominance::Dominates,
                        "cell 7: gas fee FOSD in L_B (partial)");
            out.require(fosd(spec, rows[i - 1], rows[i], true) == Dominance::Dominates,
                        "cell 8: amount FOSD in L_B (partial)");
        }
    }
    // opportunity, both regimes
    const std::vector<double> o_grid{1.5, 1.8, 2.1, 2.4, 2.7};
    const double o_top =
        derived_quantities(apply_parameter(base, SweepParameter::Opportunity, 2.7))
            .max_gas_fee;
    {
        const SweepSpec spec = spec_for(SweepParameter::Opportunity, o_grid, base, o_top);
        const std::vector<SweepRow> rows = run_sweep(spec);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            out.require(rows[i].ok && rows[i].alpha_star == 1.0,
                        "cell 9: alpha at O=" + fmt(rows[i].parameter));
            if (i == 0) continue;
            out.require(rows[i].expected_profit > rows[i - 1].expected_profit,
                        "cell 10: profit increasing in O");
            out.require(fosd(spec, rows[i - 1], rows[i], false) == Dominance::Dominates,
                        "cell 11: gas fee FOSD in O (full)");
            out.require(fosd(spec, rows[i - 1], rows[i], true) == Dominance::Dominates,
                        "cell 12: amount FOSD in O (full)");
        }
    }
    {
        const SweepSpec spec =
            spec_for(SweepParameter::Opportunity, o_grid, o2_market(100'000.0), o_top);
        const std::vector<SweepRow> rows = run_sweep(spec);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            out.require(rows[i].ok && rows[i].alpha_star < 1.0 &&
                            rows[i].expected_profit == 0.0,
                        "cell 9/10: partial regime at O=" + fmt(rows[i].parameter));
            if (i == 0) continue;
            out.require(rows[i].alpha_star > rows[i - 1].alpha_star,
                        "cell 9: alpha increasing in O");
            out.require(fosd(spec, rows[i - 1], rows[i], false) == Dominance::Dominates,
                        "cell 11: gas fee FOSD in O (partial)");
            out.require(fosd(spec, rows[i - 1], rows[i], true) == Dominance::Dominates,
                        "cell 12: amount FOSD in O (partial)");
        }
    }
    const double elapsed = seconds_since(start);
    out.require(elapsed < 300.0, "runtime " + fmt(elapsed) + "s");
    out.note("all twelve cells checked, " + fmt(elapsed) + "s");
    return out;
}

Outcome criterion_empirics() {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();

    // planted labels recovered exactly
    const testsupport::Fixture fx = testsupport::planted_fixture();
    EmpiricsConfig config;
    const ClassificationResult labels = classify_swaps(fx.blocks, fx.swaps, config);
    bool exact = labels.orphan_swaps.empty();
    for (std::size_t s = 0; s < fx.swaps.size(); ++s)
        if (labels.is_arbitrage[s] != fx.labels[s]) exact = false;
    out.require(exact, "planted labels not recovered");

    // direction exclusivity on random blocks
    SplitMix64 rng(109);
    bool exclusive = true;
    for (int i = 0; i < 10'000; ++i) {
        BlockRecord block;
        block.block_number = i;
        block.reserve_a_prev = std::pow(10.0, 1.0 + 4.0 * rng.uniform01());
        block.reserve_b_prev = std::pow(10.0, 4.0 + 4.0 * rng.uniform01());
        block.base_fee_per_gas = std::pow(10.0, -12.0 + 5.0 * rng.uniform01());
        block.cex_price_a = 100.0 + 3000.0 * rng.uniform01();
        block.cex_price_b = 0.5 + 1.5 * rng.uniform01();
        const double value_a = block.reserve_a_prev * block.cex_price_a;
        const double value_b = block.reserve_b_prev * block.cex_price_b;
        if (value_b / (value_a * 1.003) > 1.0 && value_a / (value_b * 1.003) > 1.0)
            exclusive = false;
        const ArbitrageVerdict verdict = detect_arbitrage(block, 107'176.0, 0.003);
        if (verdict.direction != TradeDirection::None &&
            !(verdict.opportunity > 1.0 &&
              verdict.max_gas_fee_usd > verdict.base_gas_fee_usd))
            exclusive = false;
    }
    out.require(exclusive, "direction exclusivity violated");

    // duration statistics against hand counts on three sequences
    {
        using TD = TradeDirection;
        std::vector<VerdictEntry> seq1;
        long long n = 1;
        for (const TD d :
             {TD::DepositA, TD::DepositA, TD::None, TD::DepositB, TD::None, TD::None})
            seq1.push_back({n++, d});
        const DurationStats s1 = duration_stats(seq1);
        out.require(s1.arbitrage.runs == 2 && s1.arbitrage.mean == 1.5 &&
                        s1.non_arbitrage.runs == 2 && s1.non_arbitrage.mean == 1.5 &&
                        s1.arbitrage.stddev == 0.5,
                    "hand count 1");

        std::vector<VerdictEntry> seq2;
        for (int i = 0; i < 12; ++i)
            seq2.push_back({100 + i, i % 2 == 0 ? TD::DepositA : TD::None});
        const DurationStats s2 = duration_stats(seq2);
        out.require(s2.arbitrage.runs == 6 && s2.arbitrage.length_1 == 6 &&
                        s2.arbitrage.mean == 1.0 && s2.arbitrage.stddev == 0.0,
                    "hand count 2");

        std::vector<VerdictEntry> seq3{{7, TD::DepositA}, {8, TD::DepositB},
                                       {9, TD::DepositB}, {10, TD::None}};
        const DurationStats s3 = duration_stats(seq3);
        out.require(s3.arbitrage.runs == 2 && s3.arbitrage.length_1 == 1 &&
                        s3.arbitrage.length_2 == 1 && s3.non_arbitrage.runs == 1,
                    "hand count 3");
    }

    // noiseless standardized regression recovered exactly
    {
        SplitMix64 ols_rng(110);
        const int n = 200;
        Eigen::MatrixXd design(n, 2);
        for (int i = 0; i < n; ++i) {
            design(i, 0) = ols_rng.uniform01();
            design(i, 1) = 5.0 * ols_rng.uniform01() - 1.0;
        }
        auto standardize = [&](const Eigen::VectorXd& col) {
            Eigen::VectorXd centered = col.array() - col.mean();
            return Eigen::VectorXd(centered /
                                   std::sqrt(centered.squaredNorm() / (n - 1.0)));
        };
        const Eigen::VectorXd response =
            0.5 * standardize(design.col(0)) - 0.25 * standardize(design.col(1));
        const OlsResult fit = ols_standardized(design, response);
        const double y_sd =
            std::sqrt((response.array() - response.mean()).square().sum() / (n - 1.0));
        const bool coefficients_exact =
            std::abs(fit.coefficients(0) - 0.5 / y_sd) <= 1e-10 &&
            std::abs(fit.coefficients(1) + 0.25 / y_sd) <= 1e-10 &&
            std::abs(fit.r_squared - 1.0) <= 1e-10 && fit.intercept == 0.0;
        out.require(coefficients_exact, "noiseless regression not exact");
    }

    // the analysis pipeline is byte-reproducible
    {
        const AnalysisReport first = run_analysis(fx.blocks, fx.swaps, config);
        const AnalysisReport second = run_analysis(fx.blocks, fx.swaps, config);
        out.require(tables_json(first).dump() == tables_json(second).dump() &&
                        regressions_json(first).dump() == regressions_json(second).dump(),
                    "analysis not byte-reproducible");
    }

    const double elapsed = seconds_since(start);
    out.require(elapsed < 10.0, "runtime " + fmt(elapsed) + "s");
    out.note(fmt(elapsed) + "s");
    return out;
}

Outcome criterion_kernel_oracles() {
    Outcome out;
    SplitMix64 rng(111);
    const double top = std::sqrt(3.0) - 1.0;
    double worst_q = 0.0, worst_k = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const MarketParams market = testsupport::random_market(rng);
        const DerivedQuantities dq = derived_quantities(market);
        const double y_a = market.pool.reserve_a;
        const double step = 1e-6 * y_a;
        const double x = 1e-3 + (top - 1e-3) * rng.uniform01();
        const double x_bar = 1e-3 + (top - 1e-3) * rng.uniform01();

        const double fd_profit = (first_mover_profit(market, 0.0, x * y_a + step) -
                                  first_mover_profit(market, 0.0, x * y_a - step)) /
                                 (2.0 * step);
        const double q = q_hat(x, dq.opportunity);
        worst_q = std::max(worst_q, std::abs(q - y_a / dq.liquidity_b * fd_profit) /
                                        std::max(1.0, std::abs(q)));

        const double fd_advantage =
            (first_mover_advantage(market, x * y_a + step, x_bar * y_a) -
             first_mover_advantage(market, x * y_a - step, x_bar * y_a)) /
            (2.0 * step);
        const double oracle =
            y_a * fd_advantage / first_mover_advantage(market, x_bar * y_a, x_bar * y_a);
        const double k = k_kernel(x, x_bar);
        worst_k = std::max(worst_k, std::abs(k - oracle) / k);
    }
    out.require(worst_q <= 1e-5, "q_hat oracle deviation " + fmt(worst_q));
    out.require(worst_k <= 1e-5, "k_kernel oracle deviation " + fmt(worst_k));
    out.note("worst q " + fmt(worst_q) + ", worst K " + fmt(worst_k));
    return out;
}

}  // namespace

int main() {
    struct Entry {
        const char* name;
        Outcome (*run)();
    };
    const Entry criteria[] = {
        {"break-even identity and grid recovery", criterion_break_even},
        {"integral-equation residual", criterion_path_residual},
        {"equilibrium flatness and optimality", criterion_flatness_and_gap},
        {"participation case boundary continuity", criterion_case_boundary},
        {"Monte Carlo agreement", criterion_monte_carlo},
        {"discretized-game oracle", criterion_oracle},
        {"support margin positive and increasing", criterion_support_margin},
        {"comparative-statics monotonicity and FOSD", criterion_statics_table},
        {"detection pipeline properties", criterion_empirics},
        {"kernel finite-difference oracles", criterion_kernel_oracles},
    };

    int failures = 0;
    int index = 0;
    for (const Entry& entry : criteria) {
        ++index;
        Outcome outcome;
        try {
            outcome = entry.run();
        } catch (const std::exception& err) {
            outcome.pass = false;
            outcome.detail = std::string("exception: ") + err.what();
        }
        std::printf("[%s] criterion %2d: %s (%s)\n", outcome.pass ? "PASS" : "FAIL",
                    index, entry.name, outcome.detail.c_str());
        std::fflush(stdout);
        if (!outcome.pass) ++failures;
    }
    if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
