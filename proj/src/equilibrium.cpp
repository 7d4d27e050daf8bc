#include "dexarb/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dexarb {

namespace {

constexpr double kBracketFloor = 1e-12;

// x-independent factor of the kernel: (1+s)(1+2s)/(2s).
inline double kernel_profile(double s) {
    return (1.0 + s) * (1.0 + 2.0 * s) / (2.0 * s);
}

void validate(const SolverConfig& cfg) {
    auto positive = [](double value, const char* field) {
        if (!(std::isfinite(value) && value > 0.0))
            throw std::invalid_argument(std::string(field) + ": must be finite and > 0");
    };
    positive(cfg.initial_step, "initial_step");
    positive(cfg.max_step, "max_step");
    positive(cfg.step_shrink_coeff, "step_shrink_coeff");
    positive(cfg.root_tolerance, "root_tolerance");
    positive(cfg.residual_tolerance, "residual_tolerance");
    positive(cfg.mass_margin, "mass_margin");
    positive(cfg.mass_step_cap, "mass_step_cap");
    if (cfg.max_nodes == 0) throw std::invalid_argument("max_nodes: must be > 0");
    if (cfg.residual_tolerance < cfg.root_tolerance)
        throw std::invalid_argument("residual_tolerance: must be >= root_tolerance");
}

// Panel [i, i+1] containing q in an increasing grid; q is clamped to the ends.
std::size_t upper_panel(const std::vector<double>& grid, double q) {
    auto it = std::upper_bound(grid.begin(), grid.end(), q);
    std::size_t hi = static_cast<std::size_t>(it - grid.begin());
    if (hi == 0) hi = 1;
    if (hi == grid.size()) hi = grid.size() - 1;
    return hi;
}

double lerp_on(const std::vector<double>& grid, const std::vector<double>& values,
               double q) {
    if (q <= grid.front()) return values.front();
    if (q >= grid.back()) return values.back();
    const std::size_t hi = upper_panel(grid, q);
    const double t = (q - grid[hi - 1]) / (grid[hi] - grid[hi - 1]);
    return values[hi - 1] + t * (values[hi] - values[hi - 1]);
}

}  // namespace

double XhatPath::x_at(double z_query) const { return lerp_on(z, x, z_query); }

double XhatPath::cumulative_v_at(double z_query) const {
    return lerp_on(z, cumulative_v, z_query);
}

double XhatPath::z_at_mass(double mass) const {
    if (mass <= 0.0) return z.front();
    if (mass > cumulative_v.back())
        throw BracketMissingError("cumulative_v reaches only " +
                                  std::to_string(cumulative_v.back()) +
                                  ", below the requested mass " + std::to_string(mass));
    auto it = std::lower_bound(cumulative_v.begin(), cumulative_v.end(), mass);
    std::size_t hi = static_cast<std::size_t>(it - cumulative_v.begin());
    if (hi == 0) return z.front();
    const double t = (mass - cumulative_v[hi - 1]) / (cumulative_v[hi] - cumulative_v[hi - 1]);
    return z[hi - 1] + t * (z[hi] - z[hi - 1]);
}

double XhatPath::z_at_x(double x_query) const {
    if (x_query >= x.front()) return z.front();
    if (x_query <= x.back()) return z.back();
    // x is strictly decreasing
    auto it = std::lower_bound(x.begin(), x.end(), x_query,
                               [](double stored, double q) { return stored > q; });
    const std::size_t hi = static_cast<std::size_t>(it - x.begin());
    const double t = (x[hi - 1] - x_query) / (x[hi - 1] - x[hi]);
    return z[hi - 1] + t * (z[hi] - z[hi - 1]);
}

double q_hat(double x, double opportunity) {
    const double one_plus = 1.0 + x;
    return 1.0 / (one_plus * one_plus) - 1.0 / opportunity;
}

double k_kernel(double x, double x_bar) {
    if (!(std::isfinite(x_bar) && x_bar > 0.0))
        throw std::invalid_argument("x_bar: must be finite and > 0");
    const double b = 1.0 + x;
    const double t = b + x_bar;
    return kernel_profile(x_bar) * (2.0 + 2.0 * x + x_bar) / (b * b * t * t);
}

double v_fun(double x) {
    if (!(std::isfinite(x) && x > 0.0))
        throw std::invalid_argument("x: must be finite and > 0");
    return (1.0 + x) * (1.0 + 2.0 * x) / (2.0 * x * x);
}

XhatPath solve_xhat(double opportunity, const SolverConfig& cfg) {
    validate(cfg);
    if (!(opportunity > 1.0 && opportunity <= 3.0))
        throw UnsupportedOpportunityError("opportunity must lie in (1, 3], got " +
                                          std::to_string(opportunity));

    const double inv_o = 1.0 / opportunity;
    const double x0 = std::sqrt(opportunity) - 1.0;

    XhatPath path;
    path.opportunity = opportunity;
    path.z = {0.0};
    path.x = {x0};
    path.cumulative_v = {0.0};

    std::vector<double> weight{0.0};  // trapezoid weight per stored node
    std::vector<double> profile{kernel_profile(x0)};

    // Equation residual at candidate value `x` for the node being added, with
    // half_dz the open trapezoid weight of the implicit endpoint K(x, x).
    // The common 1/(1+x)^2 factor of the kernel is pulled out of the sum.
    auto equation = [&](double x, double half_dz) {
        const double a = 2.0 + 2.0 * x;
        const double b = 1.0 + x;
        double sum = 0.0;
        const std::size_t n = path.x.size();
        const double* xs = path.x.data();
        const double* ws = weight.data();
        const double* ps = profile.data();
        for (std::size_t j = 0; j < n; ++j) {
            const double t = b + xs[j];
            sum += ws[j] * ps[j] * (a + xs[j]) / (t * t);
        }
        const double t_self = b + x;
        sum += half_dz * kernel_profile(x) * (a + x) / (t_self * t_self);
        return (sum - 1.0) / (b * b) + inv_o;
    };

    const double target_mass = 1.0 + cfg.mass_margin;
    double prev_drop = 0.0;
    double prev_dz = 0.0;
    while (path.cumulative_v.back() < target_mass) {
        if (path.size() >= cfg.max_nodes)
            throw NonConvergenceError(
                "max_nodes exhausted before the support mass was bracketed", path);

        const double xp = path.x.back();
        double dz = std::min(cfg.max_step, cfg.step_shrink_coeff * xp * xp);
        dz = std::min(dz, cfg.mass_step_cap / v_fun(xp));
        if (path.size() == 1) dz = std::min(dz, cfg.initial_step);
        const double half_dz = 0.5 * dz;

        weight.back() += half_dz;  // close the trailing panel

        const double f_hi = equation(xp, half_dz);
        if (!(f_hi > 0.0))
            throw NonConvergenceError("marching equation lost positivity at the previous node",
                                      path);

        // Scan down from xp to the first sign change. The equation is positive
        // again near the 1e-12 floor (endpoint term ~ dz/x), so the scan must
        // approach the root from the right rather than start at the floor.
        double probe = prev_dz > 0.0 ? 4.0 * prev_drop * (dz / prev_dz) : 1e-3 * xp;
        probe = std::max(probe, 64.0 * cfg.root_tolerance);
        double lo = xp - probe;
        double f_lo;
        for (;;) {
            if (lo <= kBracketFloor) lo = kBracketFloor;
            f_lo = equation(lo, half_dz);
            if (f_lo < 0.0 || lo <= kBracketFloor) break;
            probe *= 2.0;
            lo = xp - probe;
        }
        if (!(f_lo < 0.0))
            throw NonConvergenceError("failed to bracket the node value above the floor",
                                      path);

        double hi = xp;
        while (hi - lo > cfg.root_tolerance) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            (equation(mid, half_dz) < 0.0 ? lo : hi) = mid;
        }
        const double xk = 0.5 * (lo + hi);

        const double residual = std::abs(equation(xk, half_dz));
        if (residual > cfg.residual_tolerance)
            throw NonConvergenceError("accepted node residual exceeds residual_tolerance",
                                      path);
        path.max_residual = std::max(path.max_residual, residual);

        prev_drop = xp - xk;
        prev_dz = dz;
        weight.push_back(half_dz);
        profile.push_back(kernel_profile(xk));
        path.z.push_back(path.z.back() + dz);
        path.x.push_back(xk);
        path.cumulative_v.push_back(path.cumulative_v.back() +
                                    half_dz * (v_fun(xp) + v_fun(xk)));
    }
    return path;
}

double find_z_hat(const XhatPath& path) { return path.z_at_mass(1.0); }

double max_residual_fine_requadrature(const XhatPath& path) {
    const std::size_t n = path.size();
    if (n < 2) return 0.0;
    const double inv_o = 1.0 / path.opportunity;

    std::vector<double> prof(n), prof_mid(n - 1), x_mid(n - 1), quarter(n - 1);
    for (std::size_t j = 0; j < n; ++j) prof[j] = kernel_profile(path.x[j]);
    for (std::size_t j = 0; j + 1 < n; ++j) {
        x_mid[j] = 0.5 * (path.x[j] + path.x[j + 1]);
        prof_mid[j] = kernel_profile(x_mid[j]);
        quarter[j] = 0.25 * (path.z[j + 1] - path.z[j]);
    }

    double worst = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
        const double xk = path.x[k];
        const double a = 2.0 + 2.0 * xk;
        const double b = 1.0 + xk;
        double sum = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            const double t0 = b + path.x[j];
            const double tm = b + x_mid[j];
            const double t1 = b + path.x[j + 1];
            sum += quarter[j] * (prof[j] * (a + path.x[j]) / (t0 * t0) +
                                 2.0 * prof_mid[j] * (a + x_mid[j]) / (tm * tm) +
                                 prof[j + 1] * (a + path.x[j + 1]) / (t1 * t1));
        }
        worst = std::max(worst, std::abs((sum - 1.0) / (b * b) + inv_o));
    }
    return worst;
}

EquilibriumSolution solve_equilibrium(const MarketParams& market, const SolverConfig& cfg) {
    dexarb::validate(market);
    EquilibriumSolution sol;
    sol.market = market;
    sol.derived = derived_quantities(market);

    const double o = sol.derived.opportunity;
    if (!(o > 1.0 && o <= 3.0))
        throw UnsupportedOpportunityError(
            "equilibrium requires an opportunity in (1, 3], got " + std::to_string(o));
    if (!(sol.derived.max_gas_fee > market.base_gas_fee))
        throw NoTradeError(
            "max_gas_fee <= base_gas_fee: the arbitrageur will not trade even if executed "
            "first");

    sol.path = solve_xhat(o, cfg);
    sol.z_hat = find_z_hat(sol.path);

    const double liquidity = sol.derived.liquidity_b;
    const double fee_span = sol.derived.max_gas_fee - market.base_gas_fee;
    if (liquidity * sol.z_hat <= fee_span) {
        sol.case_tag = CaseTag::FullParticipation;
        sol.alpha_star = 1.0;
        sol.g_h = market.base_gas_fee + liquidity * sol.z_hat;
        sol.expected_profit = sol.derived.max_gas_fee - sol.g_h;
    } else {
        sol.case_tag = CaseTag::PartialParticipation;
        sol.g_h = sol.derived.max_gas_fee;
        sol.alpha_star = sol.path.cumulative_v_at(fee_span / liquidity);
        sol.expected_profit = 0.0;
    }
    return sol;
}

namespace {

double support_slack(const EquilibriumSolution& sol) {
    return 1e-9 * std::max(1.0, sol.g_h);
}

// z coordinate of a gas fee inside the support, [base fee, g_h] -> [z_support, 0].
double support_z(const EquilibriumSolution& sol, double gas_fee, bool as_out_of_support) {
    const double lo = sol.market.base_gas_fee;
    const double slack = support_slack(sol);
    if (!(gas_fee >= lo - slack && gas_fee <= sol.g_h + slack)) {
        const std::string what = "gas fee " + std::to_string(gas_fee) +
                                 " outside the equilibrium support [" + std::to_string(lo) +
                                 ", " + std::to_string(sol.g_h) + "]";
        if (as_out_of_support) throw OutOfSupportError(what);
        throw std::invalid_argument(what);
    }
    const double liquidity = sol.derived.liquidity_b;
    const double z_support = (sol.g_h - lo) / liquidity;
    return std::clamp((sol.g_h - gas_fee) / liquidity, 0.0, z_support);
}

// Mass the stored path assigns to the support; the honest density normalizer.
double support_mass(const EquilibriumSolution& sol) {
    const double z_support = (sol.g_h - sol.market.base_gas_fee) / sol.derived.liquidity_b;
    return sol.path.cumulative_v_at(z_support);
}

}  // namespace

double d_star(const EquilibriumSolution& sol, double gas_fee) {
    const double zq = support_z(sol, gas_fee, /*as_out_of_support=*/true);
    return sol.market.pool.reserve_a * sol.path.x_at(zq);
}

double phi_star(const EquilibriumSolution& sol, double gas_fee) {
    const double zq = support_z(sol, gas_fee, /*as_out_of_support=*/true);
    return v_fun(sol.path.x_at(zq)) / (sol.alpha_star * sol.derived.liquidity_b);
}

double gas_ddf(const EquilibriumSolution& sol, double gas_fee) {
    if (gas_fee < sol.market.base_gas_fee) return sol.alpha_star;
    if (gas_fee >= sol.g_h) return 0.0;
    const double zq = (sol.g_h - gas_fee) / sol.derived.liquidity_b;
    return std::min(sol.alpha_star, sol.path.cumulative_v_at(zq));
}

double amount_ddf(const EquilibriumSolution& sol, double relative_amount) {
    if (relative_amount >= sol.path.x.front()) return 0.0;
    if (relative_amount <= 0.0) return sol.alpha_star;
    const double zq = sol.path.z_at_x(relative_amount);
    return std::min(sol.alpha_star, sol.path.cumulative_v_at(zq));
}

double response_h(const EquilibriumSolution& sol, double gas_fee, double d_a) {
    const double d_max = sol.derived.optimal_amount;
    if (!(d_a >= 0.0 && d_a <= d_max * (1.0 + 1e-12) + 1e-300))
        throw std::invalid_argument("d_a: must lie in [0, optimal_amount]");
    const double z_g = support_z(sol, gas_fee, /*as_out_of_support=*/false);

    double integral = 0.0;
    if (d_a > 0.0 && z_g > 0.0) {
        const auto& path = sol.path;
        const double y_a = sol.market.pool.reserve_a;
        auto integrand = [&](double x_bar) {
            return first_mover_advantage(sol.market, d_a, y_a * x_bar) * v_fun(x_bar);
        };
        double f_prev = integrand(path.x[0]);
        std::size_t j = 1;
        while (j < path.size() && path.z[j] <= z_g) {
            const double f = integrand(path.x[j]);
            integral += 0.5 * (path.z[j] - path.z[j - 1]) * (f_prev + f);
            f_prev = f;
            ++j;
        }
        if (j < path.size() && z_g > path.z[j - 1]) {
            const double t = (z_g - path.z[j - 1]) / (path.z[j] - path.z[j - 1]);
            const double x_q = path.x[j - 1] + t * (path.x[j] - path.x[j - 1]);
            integral += 0.5 * (z_g - path.z[j - 1]) * (f_prev + integrand(x_q));
        }
    }
    // The opponent's claimed gas-fee density scales as 1/alpha_star, while
    // the trade mass the path carries is support_mass; the normalizations
    // coincide for solver output, and the ratio exposes a corrupted
    // alpha_star during verification.
    return first_mover_profit(sol.market, gas_fee, d_a) -
           (support_mass(sol) / sol.alpha_star) * integral;
}

double expected_profit(const EquilibriumSolution& sol) {
    return sol.alpha_star * (sol.derived.max_gas_fee - sol.g_h);
}

}  // namespace dexarb
