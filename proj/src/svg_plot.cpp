#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace spade {

namespace {

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2"};

}  // namespace

std::string svg_lineplot(const Table& table, const std::string& title) {
    const int width = 720, height = 440;
    const int ml = 70, mr = 20, mt = 40, mb = 50;
    const std::size_t rows = table.rows();
    const std::size_t cols = table.columns().size();
    if (rows < 2 || cols < 2)
        throw ValidationError("svg_lineplot: need at least two rows and two columns");

    double xmin = table.at(0, 0), xmax = xmin;
    double ymin = 0.0, ymax = 0.0;
    bool y_init = false;
    for (std::size_t r = 0; r < rows; ++r) {
        xmin = std::min(xmin, table.at(r, 0));
        xmax = std::max(xmax, table.at(r, 0));
        for (std::size_t c = 1; c < cols; ++c) {
            const double v = table.at(r, c);
            if (!std::isfinite(v)) continue;
            if (!y_init) {
                ymin = ymax = v;
                y_init = true;
            }
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    }
    if (xmax == xmin) xmax = xmin + 1.0;
    if (!y_init || ymax == ymin) ymax = ymin + 1.0;

    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr); };
    auto py = [&](double y) { return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb); };

    std::ostringstream svg;
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
        << "'>\n<rect width='100%' height='100%' fill='white'/>\n";
    svg << "<text x='" << width / 2 << "' y='24' text-anchor='middle' font-size='15'>" << title
        << "</text>\n";
    svg << "<line x1='" << ml << "' y1='" << height - mb << "' x2='" << width - mr << "' y2='"
        << height - mb << "' stroke='black'/>\n";
    svg << "<line x1='" << ml << "' y1='" << mt << "' x2='" << ml << "' y2='" << height - mb
        << "' stroke='black'/>\n";
    svg << "<text x='" << width / 2 << "' y='" << height - 12
        << "' text-anchor='middle' font-size='12'>" << table.columns()[0] << "</text>\n";

    for (std::size_t c = 1; c < cols; ++c) {
        svg << "<polyline fill='none' stroke='" << kColors[(c - 1) % 6]
            << "' stroke-width='1.5' points='";
        for (std::size_t r = 0; r < rows; ++r) {
            const double v = table.at(r, c);
            if (!std::isfinite(v)) continue;
            svg << px(table.at(r, 0)) << ',' << py(v) << ' ';
        }
        svg << "'/>\n";
        svg << "<text x='" << width - mr - 8 << "' y='" << mt + 16 * c
            << "' text-anchor='end' font-size='11' fill='" << kColors[(c - 1) % 6] << "'>"
            << table.columns()[c] << "</text>\n";
    }
    svg << "<text x='12' y='" << mt + 10 << "' font-size='11'>" << format_double(ymax)
        << "</text>\n";
    svg << "<text x='12' y='" << height - mb << "' font-size='11'>" << format_double(ymin)
        << "</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

void write_svg_file(const std::string& path, const Table& table, const std::string& title) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write SVG file: " + path);
    out << svg_lineplot(table, title);
}

}  // namespace spade
