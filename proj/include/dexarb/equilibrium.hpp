#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "dexarb/errors.hpp"
#include "dexarb/market.hpp"

namespace dexarb {

/// Knobs for the marching solver of the amount path. The adaptive step is
/// min(max_step, step_shrink_coeff * x^2), additionally capped so that the
/// cumulative_v increment per step stays below mass_step_cap; the first step
/// is further capped by initial_step. Marching stops once cumulative_v
/// reaches 1 + mass_margin, which brackets the support-width root.
struct SolverConfig {
    double initial_step = 1e-4;
    double max_step = 2e-5;
    double step_shrink_coeff = 2e-3;
    double root_tolerance = 1e-12;     // absolute, per-node bisection in x
    double residual_tolerance = 1e-8;  // stored-node quadrature residual bound
    std::size_t max_nodes = 2'000'000;
    double mass_margin = 0.01;
    double mass_step_cap = 0.05;
};

/// The numerically marched solution x(z) of the normalized equilibrium
/// equation Q(x(z)) = integral_0^z K(x(z), x(s)) ds, with x(0) = sqrt(O) - 1
/// and x strictly decreasing. cumulative_v[k] is the trapezoidal accumulation
/// of v(x(s)) up to z[k], non-decreasing from 0. Queries interpolate
/// piecewise-linearly, which preserves the proven monotonicity.
struct XhatPath {
    std::vector<double> z;
    std::vector<double> x;
    std::vector<double> cumulative_v;
    double opportunity = 0.0;
    double max_residual = 0.0;  // largest |equation residual| accepted at a node

    std::size_t size() const { return z.size(); }
    double x_at(double z_query) const;
    double cumulative_v_at(double z_query) const;
    /// z at which cumulative_v reaches `mass` (throws BracketMissingError if
    /// the path never accumulates that much).
    double z_at_mass(double mass) const;
    /// Inverse of the strictly decreasing x(z); x_query is clamped to the
    /// stored range, so values below the last node map to the last z.
    double z_at_x(double x_query) const;
};

/// Normalized marginal first-mover profit, 1/(1+x)^2 - 1/O.
double q_hat(double x, double opportunity);

/// Normalized marginal first-mover advantage against a competitor trading
/// x_bar of the pool; strictly positive for x >= 0, x_bar > 0.
double k_kernel(double x, double x_bar);

/// Liquidity over the diagonal first-mover advantage, (1+x)(1+2x)/(2x^2).
double v_fun(double x);

/// March the path for an opportunity in (1, 3]. At each new node the
/// trapezoidal form of the equation (implicit endpoint K(x, x)) is solved for
/// x by bisection inside (1e-12, previous x).
XhatPath solve_xhat(double opportunity, const SolverConfig& config = {});

/// Support width: the unique z with integral_0^z v(x(s)) ds = 1.
double find_z_hat(const XhatPath& path);

/// Independent accuracy check: the largest equation residual over all nodes
/// when the integral is re-done on a midpoint-refined (2x) grid.
double max_residual_fine_requadrature(const XhatPath& path);

/// Raised when max_nodes is exhausted; carries the partial path.
struct NonConvergenceError : std::runtime_error {
    NonConvergenceError(const std::string& what, XhatPath path_so_far)
        : std::runtime_error(what), partial(std::move(path_so_far)) {}
    XhatPath partial;
};

enum class CaseTag {
    FullParticipation,     // alpha* = 1, support ends at g_L + L_B * z_hat
    PartialParticipation,  // support ends at the break-even fee, alpha* < 1
};

/// The unique symmetric mixed equilibrium: trade with probability alpha_star;
/// conditional on trading, draw the gas fee from the density phi* supported on
/// [base fee, g_h] and trade the amount d_star of that fee.
struct EquilibriumSolution {
    MarketParams market;
    DerivedQuantities derived;
    XhatPath path;
    CaseTag case_tag = CaseTag::FullParticipation;
    double alpha_star = 0.0;
    double g_h = 0.0;
    double z_hat = 0.0;
    double expected_profit = 0.0;
};

EquilibriumSolution solve_equilibrium(const MarketParams& market,
                                      const SolverConfig& config = {});

/// Amount traded at gas fee g in [base fee, g_h]; strictly increasing in g.
double d_star(const EquilibriumSolution& sol, double gas_fee);

/// Equilibrium gas-fee density 1/(alpha* V(D*(g), D*(g))); strictly decreasing.
double phi_star(const EquilibriumSolution& sol, double gas_fee);

/// P(paid gas fee > g), including the no-trade mass: alpha* below the base
/// fee, 0 at and above g_h.
double gas_ddf(const EquilibriumSolution& sol, double gas_fee);

/// P(traded amount / reserve_a > d); 0 at and above sqrt(O) - 1.
double amount_ddf(const EquilibriumSolution& sol, double relative_amount);

/// Expected profit of playing (g, d_a) against the equilibrium opponent,
/// g in [base fee, g_h], d_a in [0, optimal amount].
double response_h(const EquilibriumSolution& sol, double gas_fee, double d_a);

/// alpha* (break-even fee - g_h): positive only under full participation.
double expected_profit(const EquilibriumSolution& sol);

}  // namespace dexarb
