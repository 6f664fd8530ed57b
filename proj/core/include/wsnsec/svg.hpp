#pragma once

#include <string>

#include "wsnsec/csv.hpp"

namespace wsnsec::svg {

/// Renders a standalone SVG line chart from a time-series table: the first
/// column is the x axis, every remaining column becomes one polyline, and
/// the legend is taken from the header. Throws on an empty table. A single
/// row yields a degenerate flat chart.
std::string line_chart(const csv::Table& table, const std::string& title);

void write_line_chart(const csv::Table& table, const std::string& title,
                      const std::string& path);

}  // namespace wsnsec::svg
