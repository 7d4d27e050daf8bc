#include "dexarb/serialize.hpp"

#include <stdexcept>

namespace dexarb {

namespace {

double number_field(const nlohmann::json& j, const std::string& key) {
    if (!j.contains(key))
        throw std::invalid_argument(key + ": missing");
    if (!j.at(key).is_number())
        throw std::invalid_argument(key + ": must be a number");
    return j.at(key).get<double>();
}

}  // namespace

nlohmann::json to_json(const MarketParams& market) {
    return {{"reserve_a", market.pool.reserve_a}, {"reserve_b", market.pool.reserve_b},
            {"fee_rate", market.pool.fee_rate},   {"price_a", market.price_a},
            {"price_b", market.price_b},          {"base_gas_fee", market.base_gas_fee}};
}

MarketParams market_from_json(const nlohmann::json& j) {
    MarketParams market;
    market.pool.reserve_a = number_field(j, "reserve_a");
    market.pool.reserve_b = number_field(j, "reserve_b");
    market.pool.fee_rate = number_field(j, "fee_rate");
    market.price_a = number_field(j, "price_a");
    market.price_b = number_field(j, "price_b");
    market.base_gas_fee = number_field(j, "base_gas_fee");
    validate(market);
    return market;
}

nlohmann::json to_json(const SolverConfig& config) {
    return {{"initial_step", config.initial_step},
            {"max_step", config.max_step},
            {"step_shrink_coeff", config.step_shrink_coeff},
            {"root_tolerance", config.root_tolerance},
            {"residual_tolerance", config.residual_tolerance},
            {"max_nodes", config.max_nodes},
            {"mass_margin", config.mass_margin},
            {"mass_step_cap", config.mass_step_cap}};
}

SolverConfig solver_config_from_json(const nlohmann::json& j) {
    SolverConfig config;
    for (const auto& [key, value] : j.items()) {
        if (key == "initial_step")
            config.initial_step = value.get<double>();
        else if (key == "max_step")
            config.max_step = value.get<double>();
        else if (key == "step_shrink_coeff")
            config.step_shrink_coeff = value.get<double>();
        else if (key == "root_tolerance")
            config.root_tolerance = value.get<double>();
        else if (key == "residual_tolerance")
            config.residual_tolerance = value.get<double>();
        else if (key == "max_nodes")
            config.max_nodes = value.get<std::size_t>();
        else if (key == "mass_margin")
            config.mass_margin = value.get<double>();
        else if (key == "mass_step_cap")
            config.mass_step_cap = value.get<double>();
        else
            throw std::invalid_argument("solver config: unknown key '" + key + "'");
    }
    return config;
}

std::string case_tag_name(CaseTag tag) {
    return tag == CaseTag::FullParticipation ? "full_participation" : "partial_participation";
}

nlohmann::json to_json(const EquilibriumSolution& sol) {
    nlohmann::json nodes = nlohmann::json::array();
    for (std::size_t i = 0; i < sol.path.size(); ++i)
        nodes.push_back({sol.path.z[i], sol.path.x[i], sol.path.cumulative_v[i]});
    return {{"case", case_tag_name(sol.case_tag)},
            {"alpha_star", sol.alpha_star},
            {"g_h", sol.g_h},
            {"z_hat", sol.z_hat},
            {"expected_profit", sol.expected_profit},
            {"market", to_json(sol.market)},
            {"derived",
             {{"liquidity_b", sol.derived.liquidity_b},
              {"opportunity", sol.derived.opportunity},
              {"optimal_amount", sol.derived.optimal_amount},
              {"max_gas_fee", sol.derived.max_gas_fee}}},
            {"path",
             {{"opportunity", sol.path.opportunity},
              {"max_residual", sol.path.max_residual},
              {"nodes", std::move(nodes)}}}};
}

EquilibriumSolution solution_from_json(const nlohmann::json& j) {
    EquilibriumSolution sol;
    sol.market = market_from_json(j.at("market"));
    const std::string tag = j.at("case").get<std::string>();
    if (tag == "full_participation")
        sol.case_tag = CaseTag::FullParticipation;
    else if (tag == "partial_participation")
        sol.case_tag = CaseTag::PartialParticipation;
    else
        throw std::invalid_argument("case: unknown tag '" + tag + "'");
    sol.alpha_star = number_field(j, "alpha_star");
    sol.g_h = number_field(j, "g_h");
    sol.z_hat = number_field(j, "z_hat");
    sol.expected_profit = number_field(j, "expected_profit");
    const nlohmann::json& derived = j.at("derived");
    sol.derived.liquidity_b = number_field(derived, "liquidity_b");
    sol.derived.opportunity = number_field(derived, "opportunity");
    sol.derived.optimal_amount = number_field(derived, "optimal_amount");
    sol.derived.max_gas_fee = number_field(derived, "max_gas_fee");
    const nlohmann::json& path = j.at("path");
    sol.path.opportunity = number_field(path, "opportunity");
    sol.path.max_residual = number_field(path, "max_residual");
    const nlohmann::json& nodes = path.at("nodes");
    if (!nodes.is_array() || nodes.size() < 2)
        throw std::invalid_argument("path.nodes: need at least two nodes");
    sol.path.z.reserve(nodes.size());
    sol.path.x.reserve(nodes.size());
    sol.path.cumulative_v.reserve(nodes.size());
    for (const auto& node : nodes) {
        if (!node.is_array() || node.size() != 3)
            throw std::invalid_argument("path.nodes: each node must be [z, x, cumulative_v]");
        sol.path.z.push_back(node[0].get<double>());
        sol.path.x.push_back(node[1].get<double>());
        sol.path.cumulative_v.push_back(node[2].get<double>());
    }
    return sol;
}

namespace {

nlohmann::json buckets_json(const std::array<std::size_t, 4>& buckets) {
    return {{"0", buckets[0]}, {"1", buckets[1]}, {"2", buckets[2]}, {"3_plus", buckets[3]}};
}

nlohmann::json run_stats_json(const RunStats& stats) {
    return {{"mean", stats.mean},       {"stddev", stats.stddev},
            {"runs", stats.runs},       {"length_1", stats.length_1},
            {"length_2", stats.length_2}, {"length_3_plus", stats.length_3_plus}};
}

}  // namespace

nlohmann::json tables_json(const AnalysisReport& report) {
    const ClassificationResult& cls = report.classification;
    nlohmann::json profitability = nlohmann::json::array();
    static const char* kBucketNames[4] = {"1", "2", "3", "4_plus"};
    for (std::size_t b = 0; b < 4; ++b)
        profitability.push_back({{"arbitrage_swaps_in_block", kBucketNames[b]},
                                 {"profitable", report.profitable_by_bucket[b]},
                                 {"non_profitable", report.non_profitable_by_bucket[b]}});
    return {{"block_counts",
             {{"arbitrage",
               {{"total", cls.arbitrage_block_count},
                {"by_arbitrage_swaps", buckets_json(cls.arbitrage_blocks_by_arb_swaps)},
                {"by_swaps", buckets_json(cls.arbitrage_blocks_by_swaps)}}},
              {"non_arbitrage",
               {{"total", cls.non_arbitrage_block_count},
                {"by_swaps", buckets_json(cls.non_arbitrage_blocks_by_swaps)}}}}},
            {"durations",
             {{"arbitrage", run_stats_json(report.durations.arbitrage)},
              {"non_arbitrage", run_stats_json(report.durations.non_arbitrage)}}},
            {"profitability",
             {{"arbitrage_swaps", profitability},
              {"other_swaps",
               {{"profitable", report.profitable_other},
                {"non_profitable", report.non_profitable_other}}},
              {"product_rule_warnings", report.product_rule_warnings}}}};
}

nlohmann::json regressions_json(const AnalysisReport& report) {
    nlohmann::json out = nlohmann::json::array();
    for (const RegressionReport& reg : report.regressions) {
        nlohmann::json entry = {{"name", reg.name},
                                {"regressors", reg.regressors},
                                {"status", reg.status}};
        if (reg.ok) {
            entry["coefficients"] = std::vector<double>(
                reg.fit.coefficients.data(),
                reg.fit.coefficients.data() + reg.fit.coefficients.size());
            entry["standard_errors"] = std::vector<double>(
                reg.fit.standard_errors.data(),
                reg.fit.standard_errors.data() + reg.fit.standard_errors.size());
            entry["intercept"] = reg.fit.intercept;
            entry["intercept_se"] = reg.fit.intercept_se;
            entry["r_squared"] = reg.fit.r_squared;
            entry["observations"] = reg.fit.observations;
        }
        out.push_back(std::move(entry));
    }
    return out;
}

}  // namespace dexarb
