#include "dexarb/statics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dexarb {

MarketParams apply_parameter(const MarketParams& base, SweepParameter which, double value) {
    if (!(std::isfinite(value) && value > 0.0) &&
        !(which == SweepParameter::BaseGasFee && value == 0.0))
        throw std::invalid_argument("parameter value: must be finite and positive");
    MarketParams market = base;
    switch (which) {
        case SweepParameter::BaseGasFee:
            market.base_gas_fee = value;
            break;
        case SweepParameter::Liquidity: {
            // scale the pool, not the prices: opportunity stays fixed
            const double current = base.pool.reserve_b * base.price_b;
            const double scale = value / current;
            market.pool.reserve_a = base.pool.reserve_a * scale;
            market.pool.reserve_b = base.pool.reserve_b * scale;
            break;
        }
        case SweepParameter::Opportunity: {
            const double liquidity = base.pool.reserve_b * base.price_b;
            market.pool.reserve_a =
                liquidity / (value * base.price_a * (1.0 + base.pool.fee_rate));
            break;
        }
    }
    return market;
}

std::vector<double> ddf_abscissae(double hi, std::size_t points) {
    if (!(std::isfinite(hi) && hi > 0.0))
        throw std::invalid_argument("hi: must be finite and > 0");
    if (points < 2) throw std::invalid_argument("points: must be >= 2");
    std::vector<double> grid(points);
    const double top = 1.01 * hi;
    for (std::size_t i = 0; i < points; ++i)
        grid[i] = top * static_cast<double>(i) / static_cast<double>(points - 1);
    return grid;
}

namespace {

void validate(const SweepSpec& spec) {
    if (spec.grid.empty()) throw std::invalid_argument("grid: must be non-empty");
    for (std::size_t i = 1; i < spec.grid.size(); ++i)
        if (!(spec.grid[i] > spec.grid[i - 1]))
            throw std::invalid_argument("grid: must be strictly increasing");
    if (spec.gas_abscissae.empty() || spec.amount_abscissae.empty())
        throw std::invalid_argument("ddf abscissae: must be non-empty");
}

SweepRow solve_row(const MarketParams& market, double parameter,
                   const std::vector<double>& gas_abscissae,
                   const std::vector<double>& amount_abscissae,
                   const SolverConfig& config) {
    SweepRow row;
    row.parameter = parameter;
    try {
        const EquilibriumSolution sol = solve_equilibrium(market, config);
        row.ok = true;
        row.case_tag = sol.case_tag;
        row.alpha_star = sol.alpha_star;
        row.g_h = sol.g_h;
        row.expected_profit = sol.expected_profit;
        row.z_hat = sol.z_hat;
        row.opportunity = sol.derived.opportunity;
        row.liquidity_b = sol.derived.liquidity_b;
        row.max_gas_fee = sol.derived.max_gas_fee;
        row.base_gas_fee = market.base_gas_fee;
        row.gas_ddf.reserve(gas_abscissae.size());
        for (const double g : gas_abscissae) row.gas_ddf.push_back(gas_ddf(sol, g));
        row.amount_ddf.reserve(amount_abscissae.size());
        for (const double d : amount_abscissae) row.amount_ddf.push_back(amount_ddf(sol, d));
    } catch (const std::exception& err) {
        row.ok = false;
        row.error = err.what();
    }
    return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const SolverConfig& config) {
    validate(spec);
    std::vector<SweepRow> rows;
    rows.reserve(spec.grid.size());
    for (const double value : spec.grid) {
        MarketParams market;
        try {
            market = apply_parameter(spec.base, spec.varying, value);
        } catch (const std::exception& err) {
            SweepRow row;
            row.parameter = value;
            row.error = err.what();
            rows.push_back(std::move(row));
            continue;
        }
        rows.push_back(
            solve_row(market, value, spec.gas_abscissae, spec.amount_abscissae, config));
    }
    return rows;
}

Dominance fosd_compare(const SampledDdf& ddf_low, const SampledDdf& ddf_high,
                       double tolerance) {
    if (ddf_low.abscissae.size() != ddf_high.abscissae.size() ||
        !std::equal(ddf_low.abscissae.begin(), ddf_low.abscissae.end(),
                    ddf_high.abscissae.begin()))
        throw std::invalid_argument("abscissae: the two DDFs are sampled on different grids");
    if (ddf_low.values.size() != ddf_low.abscissae.size() ||
        ddf_high.values.size() != ddf_high.abscissae.size())
        throw std::invalid_argument("values: size must match the abscissae");
    auto check_monotone = [&](const SampledDdf& ddf, const char* who) {
        for (std::size_t i = 1; i < ddf.values.size(); ++i)
            if (ddf.values[i] > ddf.values[i - 1] + tolerance)
                throw std::invalid_argument(std::string(who) + ": DDF is not non-increasing");
    };
    check_monotone(ddf_low, "ddf_low");
    check_monotone(ddf_high, "ddf_high");

    bool strictly_above = false;
    bool strictly_below = false;
    for (std::size_t i = 0; i < ddf_low.values.size(); ++i) {
        const double diff = ddf_high.values[i] - ddf_low.values[i];
        if (diff > tolerance) strictly_above = true;
        if (diff < -tolerance) strictly_below = true;
    }
    if (strictly_above && !strictly_below) return Dominance::Dominates;
    if (strictly_below && !strictly_above) return Dominance::DominatedBy;
    return Dominance::Incomparable;
}

FigureData figure_data(const std::vector<double>& o_grid, const MarketParams& base,
                       const SolverConfig& config) {
    SweepSpec spec;
    spec.varying = SweepParameter::Opportunity;
    spec.grid = o_grid;
    spec.base = base;
    // largest break-even fee over the grid bounds the shared gas abscissae
    double max_fee = 0.0;
    for (const double o : o_grid) {
        const MarketParams market = apply_parameter(base, SweepParameter::Opportunity, o);
        max_fee = std::max(max_fee, derived_quantities(market).max_gas_fee);
    }
    spec.gas_abscissae = ddf_abscissae(max_fee);
    spec.amount_abscissae = ddf_abscissae(std::sqrt(3.0) - 1.0);

    FigureData data;
    data.gas_abscissae = spec.gas_abscissae;
    data.amount_abscissae = spec.amount_abscissae;
    data.rows = run_sweep(spec, config);
    data.support_margin.reserve(data.rows.size());
    for (const SweepRow& row : data.rows) {
        const double margin =
            row.ok ? std::pow(1.0 - 1.0 / std::sqrt(row.opportunity), 2) - row.z_hat : 0.0;
        data.support_margin.push_back(margin);
    }
    return data;
}

}  // namespace dexarb
