#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dexarb/csv.hpp"
#include "dexarb/empirics.hpp"
#include "dexarb/equilibrium.hpp"
#include "dexarb/game.hpp"
#include "dexarb/serialize.hpp"
#include "dexarb/statics.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kToolVersion = "dexarb 0.1.0";
constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitSolver = 3;
constexpr int kExitVerification = 4;

std::string digest_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw dexarb::DataError("cannot read input file " + path.string());
    std::uint64_t hash = 0xcbf29ce484222325ull;
    char chunk[4096];
    while (in.read(chunk, sizeof(chunk)) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            hash ^= static_cast<unsigned char>(chunk[i]);
            hash *= 0x00000100000001b3ull;
        }
        if (!in) break;
    }
    char hex[17];
    std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(hash));
    return std::string("fnv1a:") + hex;
}

json load_json_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& err) {
        throw std::invalid_argument(path.string() + ": " + err.what());
    }
}

void write_atomic(const fs::path& out_dir, const std::string& name,
                  const std::string& content) {
    const fs::path final_path = out_dir / name;
    const fs::path tmp_path = out_dir / (name + ".partial");
    {
        std::ofstream out(tmp_path, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp_path.string());
        out << content;
    }
    fs::rename(tmp_path, final_path);
}

void write_manifest(const fs::path& out_dir, const std::string& subcommand,
                    const json& config, const json& inputs, std::uint64_t seed,
                    bool has_seed) {
    json manifest = {{"subcommand", subcommand},
                     {"tool_version", kToolVersion},
                     {"inputs", inputs},
                     {"config", config}};
    if (has_seed) manifest["seed"] = seed;
    write_atomic(out_dir, "manifest.json", manifest.dump(2) + "\n");
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> grid;
    const std::size_t colon = text.find(':');
    if (colon != std::string::npos) {
        // start:stop:step, inclusive of the endpoint up to rounding
        double start = 0.0, stop = 0.0, step = 0.0;
        char sep1 = 0, sep2 = 0;
        std::istringstream in(text);
        if (!(in >> start >> sep1 >> stop >> sep2 >> step) || sep1 != ':' || sep2 != ':' ||
            !(step > 0.0) || stop < start)
            throw std::invalid_argument("grid: expected start:stop:step, got '" + text + "'");
        for (std::size_t i = 0;; ++i) {
            const double value = start + static_cast<double>(i) * step;
            if (value > stop + 1e-9 * step) break;
            grid.push_back(std::min(value, stop));
        }
        return grid;
    }
    std::istringstream in(text);
    std::string cell;
    while (std::getline(in, cell, ',')) {
        try {
            grid.push_back(std::stod(cell));
        } catch (const std::exception&) {
            throw std::invalid_argument("grid: bad number '" + cell + "'");
        }
    }
    if (grid.empty()) throw std::invalid_argument("grid: empty");
    return grid;
}

struct SolverFlags {
    dexarb::SolverConfig config;
    void attach(CLI::App* cmd) {
        cmd->add_option("--initial-step", config.initial_step, "first marching step");
        cmd->add_option("--max-step", config.max_step, "marching step cap");
        cmd->add_option("--step-shrink", config.step_shrink_coeff,
                        "adaptive shrink coefficient (step ~ coeff * x^2)");
        cmd->add_option("--root-tol", config.root_tolerance, "per-node bisection tolerance");
        cmd->add_option("--residual-tol", config.residual_tolerance,
                        "equation residual bound at accepted nodes");
        cmd->add_option("--max-nodes", config.max_nodes, "node budget");
    }
};

int run_solve(const fs::path& config_path, const fs::path& out_dir,
              const dexarb::SolverConfig& solver) {
    const dexarb::MarketParams market =
        dexarb::market_from_json(load_json_file(config_path));
    const dexarb::EquilibriumSolution sol = dexarb::solve_equilibrium(market, solver);

    write_atomic(out_dir, "solution.json", dexarb::to_json(sol).dump(2) + "\n");

    const std::vector<double> gas_grid =
        dexarb::ddf_abscissae(sol.derived.max_gas_fee, 512);
    std::vector<double> gas_values;
    gas_values.reserve(gas_grid.size());
    for (const double g : gas_grid) gas_values.push_back(dexarb::gas_ddf(sol, g));
    std::ostringstream gas_csv;
    dexarb::write_curve_csv(gas_csv, "gas_fee", "ddf", gas_grid, gas_values);
    write_atomic(out_dir, "gas_ddf.csv", gas_csv.str());

    const std::vector<double> amount_grid =
        dexarb::ddf_abscissae(std::sqrt(3.0) - 1.0, 512);
    std::vector<double> amount_values;
    amount_values.reserve(amount_grid.size());
    for (const double d : amount_grid)
        amount_values.push_back(dexarb::amount_ddf(sol, d));
    std::ostringstream amount_csv;
    dexarb::write_curve_csv(amount_csv, "relative_amount", "ddf", amount_grid,
                            amount_values);
    write_atomic(out_dir, "amount_ddf.csv", amount_csv.str());

    write_manifest(out_dir, "solve", dexarb::to_json(solver),
                   {{config_path.string(), digest_file(config_path)}}, 0, false);
    std::cout << "case " << dexarb::case_tag_name(sol.case_tag)
              << ", alpha_star " << sol.alpha_star << ", expected profit "
              << sol.expected_profit << "\n";
    return kExitOk;
}

int run_verify(const fs::path& solution_path, const fs::path& out_dir, std::uint64_t seed,
               std::size_t gas_grid, std::size_t amount_grid, std::size_t mc_samples,
               std::size_t fp_gas, std::size_t fp_amount, std::size_t fp_iterations,
               std::size_t fp_bins) {
    const dexarb::EquilibriumSolution sol =
        dexarb::solution_from_json(load_json_file(solution_path));
    const double g_low = sol.market.base_gas_fee;
    const double scale_fee = sol.derived.max_gas_fee;
    json checks = json::object();
    std::vector<std::string> failures;

    auto record = [&](const std::string& name, json detail, bool pass) {
        detail["pass"] = pass;
        checks[name] = std::move(detail);
        if (!pass) failures.push_back(name);
    };

    // response flatness across the support
    {
        const double value = scale_fee - sol.g_h;
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double g = g_low + (sol.g_h - g_low) * i / 99.0;
            worst = std::max(worst, std::abs(dexarb::response_h(sol, g, dexarb::d_star(sol, g)) -
                                             value));
        }
        const double threshold =
            1e-4 * std::max(scale_fee, sol.derived.liquidity_b * 1e-6);
        record("flatness", {{"max_deviation", worst}, {"threshold", threshold}},
               worst <= threshold);
    }

    // best pure deviation on the grid
    {
        const double gap = dexarb::best_deviation_gap(sol, gas_grid, amount_grid);
        const double threshold = 1e-3 * scale_fee;
        record("best_deviation_gap",
               {{"gap", gap},
                {"threshold", threshold},
                {"gas_grid", gas_grid},
                {"amount_grid", amount_grid}},
               gap <= threshold);
    }

    // density normalization
    {
        const std::size_t n = 10'000;
        double integral = 0.0;
        double prev = dexarb::phi_star(sol, g_low);
        for (std::size_t i = 1; i <= n; ++i) {
            const double g = g_low + (sol.g_h - g_low) * static_cast<double>(i) / n;
            const double cur = dexarb::phi_star(sol, g);
            integral += 0.5 * (prev + cur) * (sol.g_h - g_low) / n;
            prev = cur;
        }
        record("density_normalization", {{"integral", integral}, {"threshold", 1e-4}},
               std::abs(integral - 1.0) <= 1e-4);
    }

    // Monte Carlo agreement
    {
        const dexarb::SimulationReport mc =
            dexarb::monte_carlo_payoff(sol, mc_samples, seed);
        const double analytic = dexarb::expected_profit(sol);
        const bool pass = std::abs(mc.mean_payoff - analytic) <= 3.0 * mc.std_error;
        record("monte_carlo",
               {{"mean", mc.mean_payoff},
                {"std_error", mc.std_error},
                {"analytic", analytic},
                {"samples", mc_samples},
                {"ties", mc.tie_count}},
               pass);
    }

    // discretized-game oracle
    {
        const dexarb::FictitiousPlayResult fp = dexarb::discretized_game_oracle(
            sol.market, fp_gas, fp_amount, fp_iterations, seed);
        const std::vector<double> binned =
            dexarb::rebin_histogram(fp.gas_histogram, fp_bins);
        bool decreasing = true;
        for (std::size_t i = 1; i < binned.size(); ++i)
            if (binned[i] > binned[i - 1] + 1e-6) decreasing = false;
        const bool close = std::abs(fp.trade_probability - sol.alpha_star) <= 0.05;
        record("oracle",
               {{"trade_probability", fp.trade_probability},
                {"alpha_star", sol.alpha_star},
                {"regret", fp.regret},
                {"value", fp.value},
                {"binned_gas_histogram", binned},
                {"histogram_decreasing", decreasing}},
               close && decreasing);
    }

    json report = {{"checks", checks}, {"pass", failures.empty()}, {"failed", failures}};
    write_atomic(out_dir, "report.json", report.dump(2) + "\n");
    write_manifest(out_dir, "verify",
                   {{"gas_grid", gas_grid},
                    {"amount_grid", amount_grid},
                    {"mc_samples", mc_samples},
                    {"fp_gas", fp_gas},
                    {"fp_amount", fp_amount},
                    {"fp_iterations", fp_iterations},
                    {"fp_bins", fp_bins}},
                   {{solution_path.string(), digest_file(solution_path)}}, seed, true);
    if (!failures.empty()) {
        std::cerr << "verification failed:";
        for (const std::string& name : failures) std::cerr << " " << name;
        std::cerr << "\n";
        return kExitVerification;
    }
    std::cout << "verification passed\n";
    return kExitOk;
}

int run_sweep(const fs::path& config_path, const fs::path& out_dir,
              const std::string& vary, const std::string& grid_text,
              const dexarb::SolverConfig& solver) {
    const dexarb::MarketParams base =
        dexarb::market_from_json(load_json_file(config_path));
    dexarb::SweepSpec spec;
    spec.base = base;
    spec.grid = parse_grid(grid_text);
    if (vary == "base-gas-fee")
        spec.varying = dexarb::SweepParameter::BaseGasFee;
    else if (vary == "liquidity")
        spec.varying = dexarb::SweepParameter::Liquidity;
    else if (vary == "opportunity")
        spec.varying = dexarb::SweepParameter::Opportunity;
    else
        throw std::invalid_argument(
            "--vary: expected base-gas-fee, liquidity, or opportunity");

    double top_fee = 0.0;
    for (const double value : spec.grid) {
        try {
            const dexarb::MarketParams market =
                dexarb::apply_parameter(base, spec.varying, value);
            top_fee = std::max(top_fee, dexarb::derived_quantities(market).max_gas_fee);
        } catch (const std::exception&) {
            // row error surfaces in the sweep output
        }
    }
    if (top_fee <= 0.0) top_fee = dexarb::derived_quantities(base).max_gas_fee;
    if (top_fee <= 0.0) throw std::invalid_argument("grid: no row yields a tradable market");
    spec.gas_abscissae = dexarb::ddf_abscissae(top_fee, 512);
    spec.amount_abscissae = dexarb::ddf_abscissae(std::sqrt(3.0) - 1.0, 512);

    const std::vector<dexarb::SweepRow> rows = dexarb::run_sweep(spec, solver);
    std::ostringstream scalars;
    dexarb::write_sweep_scalars_csv(scalars, rows);
    write_atomic(out_dir, "sweep.csv", scalars.str());
    std::ostringstream gas_csv;
    dexarb::write_sweep_ddf_csv(gas_csv, "gas_fee", spec.gas_abscissae, rows, false);
    write_atomic(out_dir, "sweep_gas_ddf.csv", gas_csv.str());
    std::ostringstream amount_csv;
    dexarb::write_sweep_ddf_csv(amount_csv, "relative_amount", spec.amount_abscissae, rows,
                                true);
    write_atomic(out_dir, "sweep_amount_ddf.csv", amount_csv.str());

    json config = dexarb::to_json(solver);
    config["vary"] = vary;
    config["grid"] = spec.grid;
    write_manifest(out_dir, "sweep", config,
                   {{config_path.string(), digest_file(config_path)}}, 0, false);
    return kExitOk;
}

int run_figures(const fs::path& config_path, const fs::path& out_dir,
                const std::string& o_grid_text, const dexarb::SolverConfig& solver) {
    const dexarb::MarketParams base =
        dexarb::market_from_json(load_json_file(config_path));
    const std::vector<double> o_grid = parse_grid(o_grid_text);
    const dexarb::FigureData data = dexarb::figure_data(o_grid, base, solver);

    std::ostringstream scalars;
    dexarb::write_figure_scalars_csv(scalars, data);
    write_atomic(out_dir, "figure_scalars.csv", scalars.str());
    std::ostringstream gas_csv;
    dexarb::write_sweep_ddf_csv(gas_csv, "gas_fee", data.gas_abscissae, data.rows, false);
    write_atomic(out_dir, "figure_gas_ddf.csv", gas_csv.str());
    std::ostringstream amount_csv;
    dexarb::write_sweep_ddf_csv(amount_csv, "relative_amount", data.amount_abscissae,
                                data.rows, true);
    write_atomic(out_dir, "figure_amount_ddf.csv", amount_csv.str());

    json config = dexarb::to_json(solver);
    config["o_grid"] = o_grid;
    write_manifest(out_dir, "figures", config,
                   {{config_path.string(), digest_file(config_path)}}, 0, false);
    return kExitOk;
}

int run_analyze(const fs::path& blocks_path, const fs::path& swaps_path,
                const fs::path& out_dir, const dexarb::EmpiricsConfig& config) {
    std::ifstream blocks_in(blocks_path);
    if (!blocks_in) throw std::invalid_argument("cannot open " + blocks_path.string());
    const std::vector<dexarb::BlockRecord> blocks = dexarb::read_blocks_csv(blocks_in);
    std::ifstream swaps_in(swaps_path);
    if (!swaps_in) throw std::invalid_argument("cannot open " + swaps_path.string());
    const std::vector<dexarb::SwapRecord> swaps = dexarb::read_swaps_csv(swaps_in);

    const dexarb::AnalysisReport report = dexarb::run_analysis(blocks, swaps, config);

    write_atomic(out_dir, "tables_2_3_4.json", dexarb::tables_json(report).dump(2) + "\n");
    write_atomic(out_dir, "regressions.json",
                 dexarb::regressions_json(report).dump(2) + "\n");

    std::ostringstream rejects;
    rejects << "swap_index,block_number,reason\n";
    for (const std::size_t index : report.classification.orphan_swaps)
        rejects << index << ',' << swaps[index].block_number << ",missing block\n";
    write_atomic(out_dir, "rejects.csv", rejects.str());

    write_manifest(out_dir, "analyze",
                   {{"gas_used_estimate", config.gas_used_estimate},
                    {"fee_rate", config.fee_rate},
                    {"product_rule_rel_tol", config.product_rule_rel_tol}},
                   {{blocks_path.string(), digest_file(blocks_path)},
                    {swaps_path.string(), digest_file(swaps_path)}},
                   0, false);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"equilibrium solver and measurement pipeline for the two-arbitrageur "
                 "gas-fee competition on a constant-product pool"};
    app.require_subcommand(1);

    std::string config_path, solution_path, blocks_path, swaps_path, out_dir;
    std::string vary = "opportunity", grid_text, o_grid_text = "1.1:3.0:0.1";
    std::uint64_t seed = 1;
    std::size_t gas_grid = 200, amount_grid = 200, mc_samples = 100'000;
    std::size_t fp_gas = 101, fp_amount = 51, fp_iterations = 100'000, fp_bins = 10;
    dexarb::EmpiricsConfig empirics_config;
    SolverFlags solve_flags, sweep_flags, figure_flags;

    CLI::App* solve = app.add_subcommand("solve", "solve one equilibrium");
    solve->add_option("--config", config_path, "market JSON")->required();
    solve->add_option("--out", out_dir, "output directory")->required();
    solve_flags.attach(solve);

    CLI::App* verify = app.add_subcommand("verify", "check a solved equilibrium");
    verify->add_option("--solution", solution_path, "solution JSON")->required();
    verify->add_option("--out", out_dir, "output directory")->required();
    verify->add_option("--seed", seed, "rng seed");
    verify->add_option("--gas-grid", gas_grid, "deviation grid, gas axis");
    verify->add_option("--amount-grid", amount_grid, "deviation grid, amount axis");
    verify->add_option("--mc-samples", mc_samples, "simulated games");
    verify->add_option("--fp-gas", fp_gas, "oracle gas levels");
    verify->add_option("--fp-amount", fp_amount, "oracle amount levels");
    verify->add_option("--fp-iterations", fp_iterations, "oracle iterations");
    verify->add_option("--fp-bins", fp_bins, "oracle histogram bins");

    CLI::App* sweep = app.add_subcommand("sweep", "comparative statics sweep");
    sweep->add_option("--config", config_path, "market JSON template")->required();
    sweep->add_option("--vary", vary, "base-gas-fee | liquidity | opportunity")->required();
    sweep->add_option("--grid", grid_text, "comma list or start:stop:step")->required();
    sweep->add_option("--out", out_dir, "output directory")->required();
    sweep_flags.attach(sweep);

    CLI::App* figures = app.add_subcommand("figures", "per-opportunity comparative-statics data");
    figures->add_option("--config", config_path, "market JSON template")->required();
    figures->add_option("--o-grid", o_grid_text, "opportunity grid");
    figures->add_option("--out", out_dir, "output directory")->required();
    figure_flags.attach(figures);

    CLI::App* analyze = app.add_subcommand("analyze", "offline detection pipeline");
    analyze->add_option("--blocks", blocks_path, "blocks CSV")->required();
    analyze->add_option("--swaps", swaps_path, "swaps CSV")->required();
    analyze->add_option("--out", out_dir, "output directory")->required();
    analyze->add_option("--gas-used-estimate", empirics_config.gas_used_estimate,
                        "estimated gas usage per swap");
    analyze->add_option("--fee-rate", empirics_config.fee_rate, "pool fee rate");
    analyze->add_option("--product-tol", empirics_config.product_rule_rel_tol,
                        "relative quote deviation before flagging a swap");
    std::string gas_token = "A";
    analyze
        ->add_option("--gas-token", gas_token,
                     "which asset gas is denominated in (only A is supported)")
        ->check(CLI::IsMember({"A", "B"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& err) {
        return app.exit(err);
    } catch (const CLI::CallForAllHelp& err) {
        return app.exit(err);
    } catch (const CLI::ParseError& err) {
        app.exit(err);
        return kExitValidation;
    }

    try {
        fs::create_directories(out_dir);
        if (solve->parsed()) return run_solve(config_path, out_dir, solve_flags.config);
        if (verify->parsed())
            return run_verify(solution_path, out_dir, seed, gas_grid, amount_grid,
                              mc_samples, fp_gas, fp_amount, fp_iterations, fp_bins);
        if (sweep->parsed())
            return run_sweep(config_path, out_dir, vary, grid_text, sweep_flags.config);
        if (figures->parsed())
            return run_figures(config_path, out_dir, o_grid_text, figure_flags.config);
        if (analyze->parsed()) {
            empirics_config.asset_a_is_gas_token = gas_token == "A";
            return run_analyze(blocks_path, swaps_path, out_dir, empirics_config);
        }
    } catch (const dexarb::NoTradeError& err) {
        std::cerr << "no-trade: " << err.what() << "\n";
        return kExitSolver;
    } catch (const dexarb::UnsupportedOpportunityError& err) {
        std::cerr << "unsupported opportunity: " << err.what() << "\n";
        return kExitSolver;
    } catch (const dexarb::NonConvergenceError& err) {
        std::cerr << "solver did not converge: " << err.what() << "\n";
        return kExitSolver;
    } catch (const dexarb::BracketMissingError& err) {
        std::cerr << "solver did not converge: " << err.what() << "\n";
        return kExitSolver;
    } catch (const dexarb::DataError& err) {
        std::cerr << "data error: " << err.what() << "\n";
        return kExitValidation;
    } catch (const std::invalid_argument& err) {
        std::cerr << "invalid input: " << err.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitValidation;
    }
    return kExitValidation;
}
