#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dexarb/errors.hpp"

namespace dexarb {

/// Pool state after the previous block plus the CEX quotes for the block
/// interval. cex_price_a is the per-block extreme one-second price, already
/// selected on the profit-maximizing side.
struct BlockRecord {
    long long block_number = 0;
    double reserve_a_prev = 0.0;
    double reserve_b_prev = 0.0;
    double base_fee_per_gas = 0.0;  // units of A per gas
    double cex_price_a = 0.0;       // USD
    double cex_price_b = 0.0;       // USD
};

enum class DepositSide { A, B };

struct SwapRecord {
    long long block_number = 0;
    DepositSide deposit_side = DepositSide::A;
    double amount_in = 0.0;
    double amount_out = 0.0;
    double gas_used = 0.0;
    double gas_price = 0.0;  // units of A per gas, base plus priority
    double priority_fee_per_gas = 0.0;
};

enum class TradeDirection { DepositA, DepositB, None };

/// Per-block detection outcome. `opportunity` is the larger of the two
/// directional opportunity ratios; direction is None unless it exceeds 1 and
/// the break-even fee clears the estimated base gas fee.
struct ArbitrageVerdict {
    TradeDirection direction = TradeDirection::None;
    double max_gas_fee_usd = 0.0;
    double base_gas_fee_usd = 0.0;
    double opportunity = 0.0;
};

struct EmpiricsConfig {
    double gas_used_estimate = 107176.0;  // modal gas usage of a swap
    double fee_rate = 0.003;
    double product_rule_rel_tol = 0.05;  // quality gate on reported swap amounts
    bool asset_a_is_gas_token = true;    // gas converts to USD at the block's cex_price_a
};

ArbitrageVerdict detect_arbitrage(const BlockRecord& block, double gas_used_estimate,
                                  double fee_rate);

struct SwapProfit {
    double usd = 0.0;
    bool product_rule_violation = false;  // amounts deviate from the CPMM quote
};
SwapProfit swap_profit(const BlockRecord& block, const SwapRecord& swap, double fee_rate,
                       double product_rule_rel_tol = 0.05);

/// Per-swap labels plus the block contingency counts. Count buckets are
/// indexed 0, 1, 2, >=3.
struct ClassificationResult {
    std::vector<bool> is_arbitrage;            // aligned with the swap input
    std::vector<std::size_t> orphan_swaps;     // swaps whose block is absent
    std::vector<ArbitrageVerdict> verdicts;    // aligned with the block input
    std::array<std::size_t, 4> arbitrage_blocks_by_arb_swaps{};
    std::array<std::size_t, 4> arbitrage_blocks_by_swaps{};
    std::array<std::size_t, 4> non_arbitrage_blocks_by_swaps{};
    std::size_t arbitrage_block_count = 0;
    std::size_t non_arbitrage_block_count = 0;
};
ClassificationResult classify_swaps(const std::vector<BlockRecord>& blocks,
                                    const std::vector<SwapRecord>& swaps,
                                    const EmpiricsConfig& config);

struct VerdictEntry {
    long long block_number = 0;
    TradeDirection direction = TradeDirection::None;
};

/// Run-length statistics over consecutive blocks. Arbitrage runs are maximal
/// stretches with one fixed non-None direction; non-arbitrage runs are
/// maximal None stretches. `stddev` is the population standard deviation.
struct RunStats {
    double mean = 0.0;
    double stddev = 0.0;
    std::size_t runs = 0;
    std::size_t length_1 = 0;
    std::size_t length_2 = 0;
    std::size_t length_3_plus = 0;
};
struct DurationStats {
    RunStats arbitrage;
    RunStats non_arbitrage;
};
/// Throws DataError listing missing block ranges if the numbers have gaps.
DurationStats duration_stats(const std::vector<VerdictEntry>& verdicts);

/// Least squares on the column-standardized design and response (mean 0,
/// unit sample variance). The intercept is identically 0 and is reported with
/// its conventional homoskedastic standard error.
struct OlsResult {
    Eigen::VectorXd coefficients;
    Eigen::VectorXd standard_errors;
    double intercept = 0.0;
    double intercept_se = 0.0;
    double r_squared = 0.0;
    std::size_t observations = 0;
};
OlsResult ols_standardized(const Eigen::MatrixXd& design, const Eigen::VectorXd& response);

/// CSV ingestion; headers must match the documented formats byte for byte.
std::vector<BlockRecord> read_blocks_csv(std::istream& in);
std::vector<SwapRecord> read_swaps_csv(std::istream& in);

/// One Table-6-style regression over the fixture's arbitrage swaps.
struct RegressionReport {
    std::string name;
    std::vector<std::string> regressors;
    bool ok = false;
    std::string status;  // reason when skipped
    OlsResult fit;
};

/// Everything the `analyze` pipeline emits: block/swap contingency counts,
/// duration statistics, profitability counts, and the standardized
/// regressions. Deterministic for identical inputs.
struct AnalysisReport {
    ClassificationResult classification;
    DurationStats durations;
    // profitability of arbitrage swaps grouped by arbitrage-swap count in the
    // block (buckets 1, 2, 3, >3), then non-arbitrage swaps
    std::array<std::size_t, 4> profitable_by_bucket{};
    std::array<std::size_t, 4> non_profitable_by_bucket{};
    std::size_t profitable_other = 0;
    std::size_t non_profitable_other = 0;
    std::size_t product_rule_warnings = 0;
    std::vector<RegressionReport> regressions;
};
AnalysisReport run_analysis(const std::vector<BlockRecord>& blocks,
                            const std::vector<SwapRecord>& swaps,
                            const EmpiricsConfig& config);

}  // namespace dexarb
