#pragma once

#include <string>
#include <vector>

#include "sortlab/factor_analysis.hpp"

namespace sortlab {

/// Grouped-bar data: one group per factor, one bar per technique, height is
/// the factor's percentage contribution.
struct ChartData {
    std::vector<std::string> techniques;
    std::vector<std::vector<double>> percent;  // [technique][factor]
    std::size_t factors = 0;
};

struct ReportBundle {
    std::string text;  // all per-technique tables, in input order
    ChartData chart;
    std::string svg;
};

/// Three-decimal rendering in the style of the published tables: leading zero
/// dropped for |x| < 1 (".699", "-.344") and E-notation for small non-zero
/// magnitudes ("2.519E-6").
std::string format_table_number(double x);

std::string render_technique_tables(const FactorModel& fm);
ChartData chart_data(const std::vector<FactorModel>& models);
/// Self-contained SVG (no external references).
std::string render_chart_svg(const ChartData& chart);

/// Throws FormatError when `models` is empty or a model holds a non-finite
/// number that would end up in a table.
ReportBundle build_report(const std::vector<FactorModel>& models);

}  // namespace sortlab
