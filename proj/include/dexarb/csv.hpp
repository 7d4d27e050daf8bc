#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "dexarb/statics.hpp"

namespace dexarb {

/// Shortest round-trip decimal form, locale independent.
std::string format_double(double value);

/// Two-column curve, e.g. a DDF sampled for plotting.
void write_curve_csv(std::ostream& out, std::string_view abscissa_name,
                     std::string_view value_name, const std::vector<double>& abscissae,
                     const std::vector<double>& values);

// Sweep emission. Scalars: one row per parameter value; DDFs: long format
// (parameter, abscissa, value). Column names are fixed, see README.
void write_sweep_scalars_csv(std::ostream& out, const std::vector<SweepRow>& rows);
void write_sweep_ddf_csv(std::ostream& out, std::string_view abscissa_name,
                         const std::vector<double>& abscissae,
                         const std::vector<SweepRow>& rows, bool amount);

void write_figure_scalars_csv(std::ostream& out, const FigureData& data);

}  // namespace dexarb
