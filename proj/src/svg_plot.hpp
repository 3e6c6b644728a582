#pragma once

#include <string>

#include "csv.hpp"

namespace spade {

// Minimal SVG line plot of a table: first column on x, one polyline per
// remaining column. Presentation only, no effect on any computed result.
std::string svg_lineplot(const Table& table, const std::string& title);
void write_svg_file(const std::string& path, const Table& table, const std::string& title);

}  // namespace spade
