#include "dexarb/empirics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace dexarb {

ArbitrageVerdict detect_arbitrage(const BlockRecord& block, double gas_used_estimate,
                                  double fee_rate) {
    const double value_a = block.reserve_a_prev * block.cex_price_a;
    const double value_b = block.reserve_b_prev * block.cex_price_b;
    const double o_deposit_a = value_b / (value_a * (1.0 + fee_rate));
    const double o_deposit_b = value_a / (value_b * (1.0 + fee_rate));

    ArbitrageVerdict verdict;
    verdict.base_gas_fee_usd =
        block.base_fee_per_gas * gas_used_estimate * block.cex_price_a;

    // the two directional ratios multiply to (1+f)^-2, so at most one side
    // can exceed 1
    TradeDirection candidate;
    double liquidity;
    if (o_deposit_a >= o_deposit_b) {
        verdict.opportunity = o_deposit_a;
        candidate = TradeDirection::DepositA;
        liquidity = value_b;
    } else {
        verdict.opportunity = o_deposit_b;
        candidate = TradeDirection::DepositB;
        liquidity = value_a;
    }
    if (verdict.opportunity > 1.0) {
        const double root = std::sqrt(verdict.opportunity);
        verdict.max_gas_fee_usd = liquidity * (1.0 - 1.0 / root) * (1.0 - 1.0 / root);
        if (verdict.max_gas_fee_usd > verdict.base_gas_fee_usd)
            verdict.direction = candidate;
    }
    return verdict;
}

SwapProfit swap_profit(const BlockRecord& block, const SwapRecord& swap, double fee_rate,
                       double product_rule_rel_tol) {
    double d_a, d_b;
    if (swap.deposit_side == DepositSide::A) {
        d_a = swap.amount_in;
        d_b = -swap.amount_out;
    } else {
        d_b = swap.amount_in;
        d_a = -swap.amount_out;
    }
    SwapProfit result;
    // quality gate: the received amount against the constant-product quote
    const double y_a = block.reserve_a_prev;
    const double y_b = block.reserve_b_prev;
    const double quoted_out = swap.deposit_side == DepositSide::A
                                  ? y_b * swap.amount_in / (y_a + swap.amount_in)
                                  : y_a * swap.amount_in / (y_b + swap.amount_in);
    if (std::abs(swap.amount_out - quoted_out) > product_rule_rel_tol * quoted_out)
        result.product_rule_violation = true;

    const double gas_usd = swap.gas_used * swap.gas_price * block.cex_price_a;
    const double fee_a = d_a > 0.0 ? fee_rate : 0.0;
    const double fee_b = d_b > 0.0 ? fee_rate : 0.0;
    result.usd = -(1.0 + fee_a) * d_a * block.cex_price_a -
                 (1.0 + fee_b) * d_b * block.cex_price_b - gas_usd;
    return result;
}

namespace {

std::size_t count_bucket(std::size_t n) { return n < 3 ? n : 3; }

}  // namespace

ClassificationResult classify_swaps(const std::vector<BlockRecord>& blocks,
                                    const std::vector<SwapRecord>& swaps,
                                    const EmpiricsConfig& config) {
    ClassificationResult result;
    result.verdicts.reserve(blocks.size());

    // block number -> index; duplicates are data errors
    std::vector<std::pair<long long, std::size_t>> lookup;
    lookup.reserve(blocks.size());
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        result.verdicts.push_back(
            detect_arbitrage(blocks[i], config.gas_used_estimate, config.fee_rate));
        lookup.emplace_back(blocks[i].block_number, i);
    }
    std::sort(lookup.begin(), lookup.end());
    for (std::size_t i = 1; i < lookup.size(); ++i)
        if (lookup[i].first == lookup[i - 1].first)
            throw DataError("duplicate block_number " + std::to_string(lookup[i].first));
    auto find_block = [&](long long number) -> long long {
        auto it = std::lower_bound(lookup.begin(), lookup.end(),
                                   std::make_pair(number, std::size_t{0}));
        if (it == lookup.end() || it->first != number) return -1;
        return static_cast<long long>(it->second);
    };

    result.is_arbitrage.assign(swaps.size(), false);
    std::vector<std::size_t> swaps_per_block(blocks.size(), 0);
    std::vector<std::size_t> arb_swaps_per_block(blocks.size(), 0);
    for (std::size_t s = 0; s < swaps.size(); ++s) {
        const long long bi = find_block(swaps[s].block_number);
        if (bi < 0) {
            result.orphan_swaps.push_back(s);
            continue;
        }
        const std::size_t i = static_cast<std::size_t>(bi);
        ++swaps_per_block[i];
        const ArbitrageVerdict& verdict = result.verdicts[i];
        const bool matches =
            (verdict.direction == TradeDirection::DepositA &&
             swaps[s].deposit_side == DepositSide::A) ||
            (verdict.direction == TradeDirection::DepositB &&
             swaps[s].deposit_side == DepositSide::B);
        if (matches) {
            result.is_arbitrage[s] = true;
            ++arb_swaps_per_block[i];
        }
    }

    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (result.verdicts[i].direction != TradeDirection::None) {
            ++result.arbitrage_block_count;
            ++result.arbitrage_blocks_by_arb_swaps[count_bucket(arb_swaps_per_block[i])];
            ++result.arbitrage_blocks_by_swaps[count_bucket(swaps_per_block[i])];
        } else {
            ++result.non_arbitrage_block_count;
            ++result.non_arbitrage_blocks_by_swaps[count_bucket(swaps_per_block[i])];
        }
    }
    return result;
}

namespace {

RunStats finish_runs(const std::vector<std::size_t>& lengths) {
    RunStats stats;
    stats.runs = lengths.size();
    if (lengths.empty()) return stats;
    double sum = 0.0;
    for (const std::size_t len : lengths) {
        sum += static_cast<double>(len);
        if (len == 1)
            ++stats.length_1;
        else if (len == 2)
            ++stats.length_2;
        else
            ++stats.length_3_plus;
    }
    stats.mean = sum / static_cast<double>(lengths.size());
    double sq = 0.0;
    for (const std::size_t len : lengths) {
        const double d = static_cast<double>(len) - stats.mean;
        sq += d * d;
    }
    stats.stddev = std::sqrt(sq / static_cast<double>(lengths.size()));
    return stats;
}

}  // namespace

DurationStats duration_stats(const std::vector<VerdictEntry>& verdicts) {
    std::string missing;
    for (std::size_t i = 1; i < verdicts.size(); ++i) {
        const long long prev = verdicts[i - 1].block_number;
        const long long cur = verdicts[i].block_number;
        if (cur != prev + 1) {
            if (!missing.empty()) missing += ", ";
            if (cur <= prev)
                missing += "non-increasing at " + std::to_string(cur);
            else
                missing += "[" + std::to_string(prev + 1) + ".." + std::to_string(cur - 1) + "]";
        }
    }
    if (!missing.empty()) throw DataError("block numbers are not consecutive: " + missing);

    std::vector<std::size_t> arb_runs;
    std::vector<std::size_t> quiet_runs;
    std::size_t i = 0;
    while (i < verdicts.size()) {
        const TradeDirection direction = verdicts[i].direction;
        std::size_t j = i + 1;
        while (j < verdicts.size() && verdicts[j].direction == direction) ++j;
        (direction == TradeDirection::None ? quiet_runs : arb_runs).push_back(j - i);
        i = j;
    }
    DurationStats stats;
    stats.arbitrage = finish_runs(arb_runs);
    stats.non_arbitrage = finish_runs(quiet_runs);
    return stats;
}

OlsResult ols_standardized(const Eigen::MatrixXd& design, const Eigen::VectorXd& response) {
    const Eigen::Index n = design.rows();
    const Eigen::Index p = design.cols();
    if (response.size() != n)
        throw std::invalid_argument("response: length must match the design rows");
    if (p < 1) throw std::invalid_argument("design: needs at least one column");
    if (n < p + 1)
        throw std::invalid_argument("design: needs at least columns + 1 rows");

    auto standardize = [n](const Eigen::VectorXd& col, const std::string& name,
                           std::size_t index) {
        const double mean = col.mean();
        Eigen::VectorXd centered = col.array() - mean;
        const double sd =
            std::sqrt(centered.squaredNorm() / static_cast<double>(n - 1));
        if (!(sd > 1e-12 * (std::abs(mean) + 1.0)))
            throw SingularDesignError(name + " has (near) zero variance", {index});
        return Eigen::VectorXd(centered / sd);
    };

    Eigen::MatrixXd x_std(n, p);
    for (Eigen::Index j = 0; j < p; ++j)
        x_std.col(j) = standardize(design.col(j),
                                   "design column " + std::to_string(j),
                                   static_cast<std::size_t>(j));
    const Eigen::VectorXd y_std = standardize(response, "response", static_cast<std::size_t>(p));

    // rank diagnosis before the normal equations so offenders can be named
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x_std);
    qr.setThreshold(1e-10);
    if (qr.rank() < p) {
        std::vector<std::size_t> offenders;
        const auto& perm = qr.colsPermutation().indices();
        for (Eigen::Index j = qr.rank(); j < p; ++j)
            offenders.push_back(static_cast<std::size_t>(perm[j]));
        std::sort(offenders.begin(), offenders.end());
        std::string what = "design is rank deficient; dependent columns:";
        for (const std::size_t c : offenders) what += " " + std::to_string(c);
        throw SingularDesignError(what, offenders);
    }

    const Eigen::MatrixXd gram = x_std.transpose() * x_std;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
    OlsResult result;
    result.observations = static_cast<std::size_t>(n);
    result.coefficients = ldlt.solve(x_std.transpose() * y_std);

    const Eigen::VectorXd residual = y_std - x_std * result.coefficients;
    const double rss = residual.squaredNorm();
    const double tss = y_std.squaredNorm();
    result.r_squared = tss > 0.0 ? 1.0 - rss / tss : 0.0;

    const Eigen::Index dof = n - p - 1;  // centering consumes one degree
    const double sigma_sq = dof > 0 ? std::max(rss, 0.0) / static_cast<double>(dof) : 0.0;
    const Eigen::MatrixXd gram_inv =
        ldlt.solve(Eigen::MatrixXd::Identity(p, p));
    result.standard_errors =
        (sigma_sq * gram_inv.diagonal().array()).cwiseMax(0.0).sqrt();
    result.intercept = 0.0;
    result.intercept_se = std::sqrt(sigma_sq / static_cast<double>(n));
    return result;
}

namespace {

[[noreturn]] void csv_error(std::size_t line, const std::string& why) {
    throw DataError("csv line " + std::to_string(line) + ": " + why);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            cells.push_back(line.substr(start));
            break;
        }
        cells.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return cells;
}

double parse_double(const std::string& cell, std::size_t line) {
    double value = 0.0;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) csv_error(line, "bad number '" + cell + "'");
    return value;
}

long long parse_int(const std::string& cell, std::size_t line) {
    long long value = 0;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) csv_error(line, "bad integer '" + cell + "'");
    return value;
}

bool next_line(std::istream& in, std::string& line) {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
}

}  // namespace

std::vector<BlockRecord> read_blocks_csv(std::istream& in) {
    static const std::string kHeader =
        "block_number,reserve_a_prev,reserve_b_prev,base_fee_per_gas,cex_price_a,cex_price_b";
    std::string line;
    if (!next_line(in, line) || line != kHeader)
        throw DataError("blocks csv: missing or malformed header");
    std::vector<BlockRecord> records;
    std::size_t line_no = 1;
    while (next_line(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != 6) csv_error(line_no, "expected 6 columns");
        BlockRecord rec;
        rec.block_number = parse_int(cells[0], line_no);
        rec.reserve_a_prev = parse_double(cells[1], line_no);
        rec.reserve_b_prev = parse_double(cells[2], line_no);
        rec.base_fee_per_gas = parse_double(cells[3], line_no);
        rec.cex_price_a = parse_double(cells[4], line_no);
        rec.cex_price_b = parse_double(cells[5], line_no);
        if (!(rec.reserve_a_prev > 0.0 && rec.reserve_b_prev > 0.0))
            csv_error(line_no, "reserves must be positive");
        if (!(rec.cex_price_a > 0.0 && rec.cex_price_b > 0.0))
            csv_error(line_no, "prices must be positive");
        records.push_back(rec);
    }
    return records;
}

std::vector<SwapRecord> read_swaps_csv(std::istream& in) {
    static const std::string kHeader =
        "block_number,deposit_side,amount_in,amount_out,gas_used,gas_price,priority_fee_per_gas";
    std::string line;
    if (!next_line(in, line) || line != kHeader)
        throw DataError("swaps csv: missing or malformed header");
    std::vector<SwapRecord> records;
    std::size_t line_no = 1;
    while (next_line(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != 7) csv_error(line_no, "expected 7 columns");
        SwapRecord rec;
        rec.block_number = parse_int(cells[0], line_no);
        if (cells[1] == "A")
            rec.deposit_side = DepositSide::A;
        else if (cells[1] == "B")
            rec.deposit_side = DepositSide::B;
        else
            csv_error(line_no, "deposit_side must be 'A' or 'B'");
        rec.amount_in = parse_double(cells[2], line_no);
        rec.amount_out = parse_double(cells[3], line_no);
        rec.gas_used = parse_double(cells[4], line_no);
        rec.gas_price = parse_double(cells[5], line_no);
        rec.priority_fee_per_gas = parse_double(cells[6], line_no);
        if (!(rec.amount_in > 0.0 && rec.amount_out > 0.0))
            csv_error(line_no, "amounts must be positive");
        if (rec.gas_used < 0.0 || rec.gas_price < 0.0 || rec.priority_fee_per_gas < 0.0)
            csv_error(line_no, "gas fields must be non-negative");
        records.push_back(rec);
    }
    return records;
}

namespace {

RegressionReport fit_regression(const std::string& name,
                                const std::vector<std::string>& regressors,
                                const std::vector<std::vector<double>>& columns,
                                const std::vector<double>& response) {
    RegressionReport report;
    report.name = name;
    report.regressors = regressors;
    const std::size_t n = response.size();
    if (n < columns.size() + 2) {
        report.status =
            "insufficient observations (" + std::to_string(n) + ")";
        return report;
    }
    Eigen::MatrixXd design(n, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j)
        design.col(static_cast<Eigen::Index>(j)) = Eigen::Map<const Eigen::VectorXd>(
            columns[j].data(), static_cast<Eigen::Index>(n));
    const Eigen::Map<const Eigen::VectorXd> y(response.data(),
                                              static_cast<Eigen::Index>(n));
    try {
        report.fit = ols_standardized(design, y);
        report.ok = true;
        report.status = "ok";
    } catch (const std::exception& err) {
        report.status = err.what();
    }
    return report;
}

}  // namespace

AnalysisReport run_analysis(const std::vector<BlockRecord>& blocks,
                            const std::vector<SwapRecord>& swaps,
                            const EmpiricsConfig& config) {
    if (!config.asset_a_is_gas_token)
        throw std::invalid_argument(
            "asset_a_is_gas_token: gas can only be priced through asset A; remap the "
            "pair so the gas token is asset A");
    AnalysisReport report;
    report.classification = classify_swaps(blocks, swaps, config);

    std::vector<std::size_t> order(blocks.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return blocks[a].block_number < blocks[b].block_number;
    });
    std::vector<VerdictEntry> entries;
    entries.reserve(blocks.size());
    for (const std::size_t i : order)
        entries.push_back(
            {blocks[i].block_number, report.classification.verdicts[i].direction});
    report.durations = duration_stats(entries);

    // per-block arbitrage swap counts for the profitability buckets
    std::vector<std::size_t> block_of_swap(swaps.size(), static_cast<std::size_t>(-1));
    std::vector<std::size_t> arb_count(blocks.size(), 0);
    {
        std::vector<std::pair<long long, std::size_t>> lookup;
        lookup.reserve(blocks.size());
        for (std::size_t i = 0; i < blocks.size(); ++i)
            lookup.emplace_back(blocks[i].block_number, i);
        std::sort(lookup.begin(), lookup.end());
        for (std::size_t s = 0; s < swaps.size(); ++s) {
            auto it = std::lower_bound(lookup.begin(), lookup.end(),
                                       std::make_pair(swaps[s].block_number, std::size_t{0}));
            if (it == lookup.end() || it->first != swaps[s].block_number) continue;
            block_of_swap[s] = it->second;
            if (report.classification.is_arbitrage[s]) ++arb_count[it->second];
        }
    }

    struct Row {
        double rel_amount, profit, opportunity, gas_fee, liquidity, base_fee;
        bool priority;
        std::size_t block_arb_count;
    };
    std::vector<Row> rows;
    for (std::size_t s = 0; s < swaps.size(); ++s) {
        if (block_of_swap[s] == static_cast<std::size_t>(-1)) continue;
        const std::size_t bi = block_of_swap[s];
        const BlockRecord& block = blocks[bi];
        const SwapProfit profit =
            swap_profit(block, swaps[s], config.fee_rate, config.product_rule_rel_tol);
        if (profit.product_rule_violation) ++report.product_rule_warnings;

        const bool profitable = profit.usd > 0.0;
        if (report.classification.is_arbitrage[s]) {
            const std::size_t bucket = std::min<std::size_t>(arb_count[bi], 4) - 1;
            (profitable ? report.profitable_by_bucket
                        : report.non_profitable_by_bucket)[bucket] += 1;
            const bool deposit_a = swaps[s].deposit_side == DepositSide::A;
            Row row;
            row.rel_amount = std::max(
                swaps[s].amount_in /
                    (deposit_a ? block.reserve_a_prev : block.reserve_b_prev),
                swaps[s].amount_out /
                    (deposit_a ? block.reserve_b_prev : block.reserve_a_prev));
            row.profit = profit.usd;
            row.opportunity = report.classification.verdicts[bi].opportunity;
            row.gas_fee = swaps[s].gas_used * swaps[s].gas_price * block.cex_price_a;
            row.liquidity = deposit_a ? block.reserve_b_prev * block.cex_price_b
                                      : block.reserve_a_prev * block.cex_price_a;
            row.base_fee = report.classification.verdicts[bi].base_gas_fee_usd;
            row.priority = swaps[s].priority_fee_per_gas > 0.0;
            row.block_arb_count = arb_count[bi];
            rows.push_back(row);
        } else {
            (profitable ? report.profitable_other : report.non_profitable_other) += 1;
        }
    }

    auto collect = [&](auto&& predicate) {
        std::vector<double> base, liq, opp, gas, rel, prof;
        for (const Row& row : rows) {
            if (!predicate(row)) continue;
            base.push_back(row.base_fee);
            liq.push_back(row.liquidity);
            opp.push_back(row.opportunity);
            gas.push_back(row.gas_fee);
            rel.push_back(row.rel_amount);
            prof.push_back(row.profit);
        }
        return std::make_tuple(base, liq, opp, gas, rel, prof);
    };

    {
        // swaps that actually bid a priority fee
        auto [base, liq, opp, gas, rel, prof] =
            collect([](const Row& row) { return row.priority; });
        report.regressions.push_back(fit_regression(
            "relative_amount_on_gas_fee",
            {"base_gas_fee", "liquidity", "opportunity", "gas_fee"},
            {base, liq, opp, gas}, rel));
        report.regressions.push_back(
            fit_regression("profit", {"base_gas_fee", "liquidity", "opportunity"},
                           {base, liq, opp}, prof));
    }
    {
        // blocks crowded enough to be treated as certain participation
        auto [base, liq, opp, gas, rel, prof] =
            collect([](const Row& row) { return row.block_arb_count >= 3; });
        (void)prof;
        report.regressions.push_back(fit_regression(
            "relative_amount_full_participation",
            {"base_gas_fee", "liquidity", "opportunity"}, {base, liq, opp}, rel));
        report.regressions.push_back(fit_regression(
            "gas_fee_full_participation", {"base_gas_fee", "liquidity", "opportunity"},
            {base, liq, opp}, gas));
    }
    return report;
}

}  // namespace dexarb
