#include "dexarb/csv.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>
#include <stdexcept>

#include "dexarb/serialize.hpp"

namespace dexarb {

std::string format_double(double value) {
    char buffer[32];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
    return std::string(buffer, ptr);
}

void write_curve_csv(std::ostream& out, std::string_view abscissa_name,
                     std::string_view value_name, const std::vector<double>& abscissae,
                     const std::vector<double>& values) {
    if (abscissae.size() != values.size())
        throw std::invalid_argument("curve csv: abscissae/values size mismatch");
    out << abscissa_name << ',' << value_name << '\n';
    for (std::size_t i = 0; i < abscissae.size(); ++i)
        out << format_double(abscissae[i]) << ',' << format_double(values[i]) << '\n';
}

namespace {

std::string sanitize(std::string text) {
    std::replace(text.begin(), text.end(), ',', ';');
    std::replace(text.begin(), text.end(), '\n', ' ');
    return text;
}

}  // namespace

void write_sweep_scalars_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "parameter,status,case,alpha_star,g_h,expected_profit,z_hat,opportunity,"
           "liquidity_b,max_gas_fee,base_gas_fee,error\n";
    for (const SweepRow& row : rows) {
        out << format_double(row.parameter) << ',';
        if (row.ok) {
            out << "ok," << case_tag_name(row.case_tag) << ','
                << format_double(row.alpha_star) << ',' << format_double(row.g_h) << ','
                << format_double(row.expected_profit) << ',' << format_double(row.z_hat)
                << ',' << format_double(row.opportunity) << ','
                << format_double(row.liquidity_b) << ',' << format_double(row.max_gas_fee)
                << ',' << format_double(row.base_gas_fee) << ",\n";
        } else {
            out << "error,,,,,,,,,," << sanitize(row.error) << '\n';
        }
    }
}

void write_sweep_ddf_csv(std::ostream& out, std::string_view abscissa_name,
                         const std::vector<double>& abscissae,
                         const std::vector<SweepRow>& rows, bool amount) {
    out << "parameter," << abscissa_name << ",ddf\n";
    for (const SweepRow& row : rows) {
        if (!row.ok) continue;
        const std::vector<double>& values = amount ? row.amount_ddf : row.gas_ddf;
        for (std::size_t i = 0; i < abscissae.size(); ++i)
            out << format_double(row.parameter) << ',' << format_double(abscissae[i])
                << ',' << format_double(values[i]) << '\n';
    }
}

void write_figure_scalars_csv(std::ostream& out, const FigureData& data) {
    out << "opportunity,status,support_margin,alpha_star,expected_profit,g_h,z_hat,case,"
           "error\n";
    for (std::size_t i = 0; i < data.rows.size(); ++i) {
        const SweepRow& row = data.rows[i];
        out << format_double(row.parameter) << ',';
        if (row.ok) {
            out << "ok," << format_double(data.support_margin[i]) << ','
                << format_double(row.alpha_star) << ',' << format_double(row.expected_profit)
                << ',' << format_double(row.g_h) << ',' << format_double(row.z_hat) << ','
                << case_tag_name(row.case_tag) << ",\n";
        } else {
            out << "error,,,,,,," << sanitize(row.error) << '\n';
        }
    }
}

}  // namespace dexarb
