#pragma once

#include <string>

#include "json.hpp"

#include "dexarb/empirics.hpp"
#include "dexarb/equilibrium.hpp"

namespace dexarb {

// Market configs and solved equilibria round-trip through JSON exactly
// (doubles are emitted in shortest round-trip form).

nlohmann::json to_json(const MarketParams& market);
MarketParams market_from_json(const nlohmann::json& j);

/// Missing keys keep their defaults; unknown keys are rejected.
SolverConfig solver_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SolverConfig& config);

std::string case_tag_name(CaseTag tag);

nlohmann::json to_json(const EquilibriumSolution& sol);
EquilibriumSolution solution_from_json(const nlohmann::json& j);

nlohmann::json tables_json(const AnalysisReport& report);
nlohmann::json regressions_json(const AnalysisReport& report);

}  // namespace dexarb
