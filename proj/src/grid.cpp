#include "grid.hpp"

#include <cmath>

#include "errors.hpp"

namespace spade {

GridSpec GridSpec::centered(double half_width_x, double half_width_y, int nx, int ny) {
    GridSpec g{-half_width_x, half_width_x, -half_width_y, half_width_y, nx, ny};
    g.validate();
    return g;
}

void GridSpec::validate() const {
    if (!(x_max > x_min)) throw ValidationError("GridSpec: x_max must exceed x_min");
    if (!(y_max > y_min)) throw ValidationError("GridSpec: y_max must exceed y_min");
    if (nx < 2) throw ValidationError("GridSpec: nx must be >= 2");
    if (ny < 2) throw ValidationError("GridSpec: ny must be >= 2");
    if (!std::isfinite(x_min) || !std::isfinite(x_max) ||
        !std::isfinite(y_min) || !std::isfinite(y_max))
        throw ValidationError("GridSpec: bounds must be finite");
}

GridSpec GridSpec::refined() const {
    GridSpec g = *this;
    g.nx = 2 * nx - 1;
    g.ny = 2 * ny - 1;
    return g;
}

ComplexField::ComplexField(GridSpec grid, std::vector<std::complex<double>> values,
                           bool truncation_warning)
    : grid_(grid), values_(std::move(values)), truncation_warning_(truncation_warning) {
    grid_.validate();
    if (values_.size() != grid_.node_count())
        throw ValidationError("ComplexField: value count does not match grid");
    for (const auto& v : values_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw ValidationError("ComplexField: non-finite amplitude");
}

std::complex<double> inner_product(const ComplexField& f, const ComplexField& g) {
    if (!(f.grid() == g.grid()))
        throw ValidationError("inner_product: fields live on different grids");
    const GridSpec& spec = f.grid();
    const double dA = spec.dx() * spec.dy();
    std::complex<double> sum = 0.0;
    for (int j = 0; j < spec.ny; ++j) {
        double wy = (j == 0 || j == spec.ny - 1) ? 0.5 : 1.0;
        std::complex<double> row = 0.0;
        for (int i = 0; i < spec.nx; ++i) {
            double wx = (i == 0 || i == spec.nx - 1) ? 0.5 : 1.0;
            row += wx * std::conj(f.at(i, j)) * g.at(i, j);
        }
        sum += wy * row;
    }
    return sum * dA;
}

}  // namespace spade
