#pragma once

#include <complex>
#include <vector>

namespace spade {

// Uniform rectangular sampling of the transverse plane. Node i runs along x,
// node j along y; spacing is (max-min)/(n-1) so the end points are included.
struct GridSpec {
    double x_min = 0.0, x_max = 0.0;
    double y_min = 0.0, y_max = 0.0;
    int nx = 0, ny = 0;

    static GridSpec centered(double half_width_x, double half_width_y, int nx, int ny);

    void validate() const;  // throws ValidationError
    double dx() const { return (x_max - x_min) / (nx - 1); }
    double dy() const { return (y_max - y_min) / (ny - 1); }
    double x(int i) const { return x_min + i * dx(); }
    double y(int j) const { return y_min + j * dy(); }
    std::size_t node_count() const { return static_cast<std::size_t>(nx) * ny; }

    // Grid with the same window and 2n-1 nodes per axis (keeps every old node).
    GridSpec refined() const;

    bool operator==(const GridSpec&) const = default;
};

// Complex amplitude sampled on a GridSpec, units 1/m so <u|u> is dimensionless.
// Row-major with y as the slow index: values[j*nx + i].
class ComplexField {
public:
    ComplexField(GridSpec grid, std::vector<std::complex<double>> values,
                 bool truncation_warning = false);

    const GridSpec& grid() const { return grid_; }
    const std::vector<std::complex<double>>& values() const { return values_; }
    std::complex<double>& at(int i, int j) { return values_[static_cast<std::size_t>(j) * grid_.nx + i]; }
    std::complex<double> at(int i, int j) const { return values_[static_cast<std::size_t>(j) * grid_.nx + i]; }

    // Set when the sampling window leaves less than ~2 waists around the mode
    // center, i.e. the Gaussian tail carries non-negligible mass off-grid.
    bool truncation_warning() const { return truncation_warning_; }

private:
    GridSpec grid_;
    std::vector<std::complex<double>> values_;
    bool truncation_warning_;
};

// 2D trapezoid quadrature of conj(f)*g. Grids must match exactly.
std::complex<double> inner_product(const ComplexField& f, const ComplexField& g);

}  // namespace spade
