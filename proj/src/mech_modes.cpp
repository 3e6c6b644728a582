#include "mech_modes.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "constants.hpp"
#include "errors.hpp"

namespace spade {

void RibbonGeometry::validate() const {
    if (!(width > 0.0)) throw ValidationError("RibbonGeometry: width must be positive");
    if (!(length > 0.0)) throw ValidationError("RibbonGeometry: length must be positive");
}

ModeShape ModeShape::torsion(const RibbonGeometry& geo) {
    geo.validate();
    ModeShape s;
    s.kind_ = Kind::torsion_fundamental;
    s.geo_ = geo;
    return s;
}

ModeShape ModeShape::flexural(const RibbonGeometry& geo) {
    geo.validate();
    ModeShape s;
    s.kind_ = Kind::flexural_fundamental;
    s.geo_ = geo;
    return s;
}

ModeShape ModeShape::gridded(const GridSpec& grid, std::vector<double> values, bool coarse_warning) {
    grid.validate();
    if (values.size() != grid.node_count())
        throw ValidationError("ModeShape: sample count does not match grid");
    double peak = 0.0;
    for (double v : values) {
        if (!std::isfinite(v)) throw ValidationError("ModeShape: non-finite sample");
        peak = std::max(peak, std::abs(v));
    }
    if (peak == 0.0) throw ValidationError("ModeShape: all samples are zero, cannot normalize");
    for (double& v : values) v /= peak;

    ModeShape s;
    s.kind_ = Kind::gridded;
    s.grid_ = grid;
    s.values_ = std::move(values);
    s.coarse_warning_ = coarse_warning || grid.nx < 16 || grid.ny < 16;
    return s;
}

double ModeShape::half_width() const {
    return kind_ == Kind::gridded ? std::max(std::abs(grid_.x_min), std::abs(grid_.x_max))
                                  : geo_.width / 2.0;
}

double ModeShape::half_length() const {
    return kind_ == Kind::gridded ? std::max(std::abs(grid_.y_min), std::abs(grid_.y_max))
                                  : geo_.length / 2.0;
}

double ModeShape::interp(double x, double y) const {
    if (x < grid_.x_min || x > grid_.x_max || y < grid_.y_min || y > grid_.y_max) return 0.0;
    const double fx = (x - grid_.x_min) / grid_.dx();
    const double fy = (y - grid_.y_min) / grid_.dy();
    int i0 = std::min(static_cast<int>(fx), grid_.nx - 2);
    int j0 = std::min(static_cast<int>(fy), grid_.ny - 2);
    const double tx = fx - i0, ty = fy - j0;
    auto v = [&](int i, int j) { return values_[static_cast<std::size_t>(j) * grid_.nx + i]; };
    return (1 - tx) * (1 - ty) * v(i0, j0) + tx * (1 - ty) * v(i0 + 1, j0) +
           (1 - tx) * ty * v(i0, j0 + 1) + tx * ty * v(i0 + 1, j0 + 1);
}

double ModeShape::eval(double x, double y) const {
    switch (kind_) {
        case Kind::torsion_fundamental: {
            if (std::abs(x) > geo_.width / 2.0 || std::abs(y) > geo_.length / 2.0) return 0.0;
            return (2.0 * x / geo_.width) * std::cos(constants::pi * y / geo_.length);
        }
        case Kind::flexural_fundamental: {
            if (std::abs(x) > geo_.width / 2.0 || std::abs(y) > geo_.length / 2.0) return 0.0;
            return std::cos(constants::pi * y / geo_.length);
        }
        case Kind::gridded:
            return interp(x, y);
    }
    return 0.0;
}

std::pair<double, double> ModeShape::gradient(double x, double y) const {
    switch (kind_) {
        case Kind::torsion_fundamental: {
            if (std::abs(x) > geo_.width / 2.0 || std::abs(y) > geo_.length / 2.0) return {0.0, 0.0};
            const double arg = constants::pi * y / geo_.length;
            return {(2.0 / geo_.width) * std::cos(arg),
                    -(2.0 * x / geo_.width) * (constants::pi / geo_.length) * std::sin(arg)};
        }
        case Kind::flexural_fundamental: {
            if (std::abs(x) > geo_.width / 2.0 || std::abs(y) > geo_.length / 2.0) return {0.0, 0.0};
            return {0.0, -(constants::pi / geo_.length) * std::sin(constants::pi * y / geo_.length)};
        }
        case Kind::gridded: {
            const double hx = grid_.dx(), hy = grid_.dy();
            return {(interp(x + hx, y) - interp(x - hx, y)) / (2.0 * hx),
                    (interp(x, y + hy) - interp(x, y - hy)) / (2.0 * hy)};
        }
    }
    return {0.0, 0.0};
}

namespace {

double parse_double(const std::string& tok, std::size_t line) {
    try {
        std::size_t pos = 0;
        double v = std::stod(tok, &pos);
        if (pos != tok.size()) throw ParseError("trailing characters in number '" + tok + "'", line);
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("cannot parse '" + tok + "' as a number", line);
    }
}

}  // namespace

ModeShape load_grid_shape(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;

    auto next_line = [&]() -> std::string {
        while (std::getline(in, line)) {
            ++line_no;
            if (line.find_first_not_of(" \t\r\n") != std::string::npos && line[0] != '#') return line;
        }
        throw ParseError("unexpected end of modeshape file", line_no);
    };

    std::istringstream header(next_line());
    long nx = 0, ny = 0;
    if (!(header >> nx >> ny)) throw ParseError("expected 'nx ny' header", line_no);
    if (nx < 2 || ny < 2) throw ParseError("grid must be at least 2x2", line_no);

    std::istringstream bounds(next_line());
    GridSpec grid;
    grid.nx = static_cast<int>(nx);
    grid.ny = static_cast<int>(ny);
    if (!(bounds >> grid.x_min >> grid.x_max >> grid.y_min >> grid.y_max))
        throw ParseError("expected 'x_min x_max y_min y_max' bounds", line_no);
    try {
        grid.validate();
    } catch (const ValidationError& e) {
        throw ParseError(e.what(), line_no);
    }

    std::vector<double> values;
    values.reserve(grid.node_count());
    while (values.size() < grid.node_count()) {
        std::istringstream row(next_line());
        std::string tok;
        while (row >> tok) {
            if (values.size() >= grid.node_count())
                throw ParseError("more samples than nx*ny", line_no);
            double v = parse_double(tok, line_no);
            if (!std::isfinite(v)) throw ParseError("non-finite sample", line_no);
            values.push_back(v);
        }
    }
    try {
        return ModeShape::gridded(grid, std::move(values));
    } catch (const ValidationError& e) {
        throw ParseError(e.what(), line_no);
    }
}

ModeShape load_grid_shape_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open modeshape file: " + path);
    return load_grid_shape(in);
}

void write_grid_shape(std::ostream& out, const GridSpec& grid, const std::vector<double>& values) {
    grid.validate();
    if (values.size() != grid.node_count())
        throw ValidationError("write_grid_shape: sample count does not match grid");
    out.precision(17);
    out << grid.nx << ' ' << grid.ny << '\n';
    out << grid.x_min << ' ' << grid.x_max << ' ' << grid.y_min << ' ' << grid.y_max << '\n';
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i)
            out << values[static_cast<std::size_t>(j) * grid.nx + i] << (i + 1 < grid.nx ? ' ' : '\n');
    }
}

void MechanicalMode::validate() const {
    if (!(frequency > 0.0)) throw ValidationError("MechanicalMode: frequency must be positive");
    if (!(quality_factor > 0.0)) throw ValidationError("MechanicalMode: quality factor must be positive");
    if (!(moment_of_inertia > 0.0)) throw ValidationError("MechanicalMode: moment of inertia must be positive");
    if (!(bath_temperature > 0.0)) throw ValidationError("MechanicalMode: bath temperature must be positive");
}

double MechanicalMode::angular_frequency() const { return 2.0 * constants::pi * frequency; }

double MechanicalMode::linewidth() const { return angular_frequency() / quality_factor; }

}  // namespace spade
