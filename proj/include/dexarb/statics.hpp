#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dexarb/equilibrium.hpp"
#include "dexarb/market.hpp"

namespace dexarb {

enum class SweepParameter { BaseGasFee, Liquidity, Opportunity };

/// A comparative-statics sweep: solve one equilibrium per grid value of the
/// varying parameter, everything else taken from `base`. DDF curves are
/// sampled on the shared abscissae so rows are directly comparable.
struct SweepSpec {
    SweepParameter varying = SweepParameter::Opportunity;
    std::vector<double> grid;  // strictly increasing
    MarketParams base;
    std::vector<double> gas_abscissae;
    std::vector<double> amount_abscissae;
};

struct SweepRow {
    double parameter = 0.0;
    bool ok = false;
    std::string error;  // non-empty when !ok
    CaseTag case_tag = CaseTag::FullParticipation;
    double alpha_star = 0.0;
    double g_h = 0.0;
    double expected_profit = 0.0;
    double z_hat = 0.0;
    double opportunity = 0.0;
    double liquidity_b = 0.0;
    double max_gas_fee = 0.0;
    double base_gas_fee = 0.0;
    std::vector<double> gas_ddf;     // on spec.gas_abscissae
    std::vector<double> amount_ddf;  // on spec.amount_abscissae
};

/// `base` with the varying parameter set to `value`. Liquidity scales both
/// reserves (opportunity held fixed); opportunity rescales reserve_a
/// (liquidity held fixed); the base gas fee is set directly.
MarketParams apply_parameter(const MarketParams& base, SweepParameter which, double value);

/// Shared DDF sampling grids: `points` equally spaced values on
/// [0, 1.01 * hi]; the amount grid conventionally uses hi = sqrt(3) - 1, the
/// largest relative amount any supported opportunity admits.
std::vector<double> ddf_abscissae(double hi, std::size_t points = 512);

/// One solved equilibrium per grid point; per-row failures are recorded in
/// the row status without aborting the sweep.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, const SolverConfig& config = {});

enum class Dominance { Dominates, DominatedBy, Incomparable };

/// First-order stochastic dominance of the higher-parameter DDF relative to
/// the lower-parameter one, decided pointwise on the shared abscissae.
/// Curves equal within the tolerance everywhere are Incomparable.
struct SampledDdf {
    std::vector<double> abscissae;
    std::vector<double> values;
};
Dominance fosd_compare(const SampledDdf& ddf_low, const SampledDdf& ddf_high,
                       double tolerance = 1e-6);

/// Per-opportunity comparative-statics data: the support-margin
/// quantity (1 - O^{-1/2})^2 - z_hat, participation and profit curves, and
/// the DDF families.
struct FigureData {
    std::vector<SweepRow> rows;        // one per opportunity grid value
    std::vector<double> support_margin;
    std::vector<double> gas_abscissae;
    std::vector<double> amount_abscissae;
};

FigureData figure_data(const std::vector<double>& o_grid, const MarketParams& base,
                       const SolverConfig& config = {});

}  // namespace dexarb
