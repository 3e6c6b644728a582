#include "hg_basis.hpp"

#include <algorithm>
#include <cmath>

#include "constants.hpp"
#include "errors.hpp"

namespace spade {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

double wrap_angle(double a) {
    // normalize to (-pi, pi]
    const double two_pi = 2.0 * constants::pi;
    a = std::fmod(a, two_pi);
    if (a <= -constants::pi) a += two_pi;
    if (a > constants::pi) a -= two_pi;
    return a;
}

}  // namespace

void OpticalMode::validate() const {
    if (m < 0 || n < 0) throw ValidationError("OpticalMode: indices must be non-negative");
    if (m + n > 10) throw ValidationError("OpticalMode: m+n exceeds the 10-channel sorter bound");
    if (!(waist > 0.0)) throw ValidationError("OpticalMode: waist must be positive");
    if (!std::isfinite(center_x) || !std::isfinite(center_y) || !std::isfinite(rotation))
        throw ValidationError("OpticalMode: non-finite parameter");
}

OpticalMode OpticalMode::normalized_rotation() const {
    OpticalMode out = *this;
    out.rotation = wrap_angle(rotation);
    return out;
}

double hermite(int n, double t) {
    if (n == 0) return 1.0;
    if (n == 1) return 2.0 * t;
    double hm2 = 1.0, hm1 = 2.0 * t, h = 0.0;
    for (int k = 2; k <= n; ++k) {
        h = 2.0 * t * hm1 - 2.0 * (k - 1) * hm2;
        hm2 = hm1;
        hm1 = h;
    }
    return h;
}

double eval_hg(const OpticalMode& mode, double x, double y) {
    mode.validate();
    const double ca = std::cos(mode.rotation), sa = std::sin(mode.rotation);
    // rotate into the mode frame, then shift
    const double xr = ca * x + sa * y;
    const double yr = -sa * x + ca * y;
    const double u = xr - mode.center_x;
    const double v = yr - mode.center_y;

    const double w = mode.waist;
    const double norm = std::sqrt(2.0 / (constants::pi * w * w) /
                                  (std::pow(2.0, mode.m + mode.n) * factorial(mode.m) * factorial(mode.n)));
    const double s = std::sqrt(2.0) / w;
    return norm * hermite(mode.m, s * u) * hermite(mode.n, s * v) *
           std::exp(-(u * u + v * v) / (w * w));
}

ComplexField sample_mode(const OpticalMode& mode, const GridSpec& grid) {
    mode.validate();
    grid.validate();

    // Distance from the mode center to the nearest window edge, in the grid
    // frame. The center is specified in the mode frame; rotate it back.
    const double ca = std::cos(mode.rotation), sa = std::sin(mode.rotation);
    const double cx = ca * mode.center_x - sa * mode.center_y;
    const double cy = sa * mode.center_x + ca * mode.center_y;
    const double margin = std::min({cx - grid.x_min, grid.x_max - cx,
                                    cy - grid.y_min, grid.y_max - cy});
    const bool truncated = margin < 2.0 * mode.waist;

    std::vector<std::complex<double>> values(grid.node_count());
    for (int j = 0; j < grid.ny; ++j) {
        const double y = grid.y(j);
        for (int i = 0; i < grid.nx; ++i)
            values[static_cast<std::size_t>(j) * grid.nx + i] = eval_hg(mode, grid.x(i), y);
    }
    return ComplexField(grid, std::move(values), truncated);
}

double ModeSuperposition::eval(double x, double y) const {
    double v = 0.0;
    for (const auto& [c, mode] : terms) v += c * eval_hg(mode, x, y);
    return v;
}

ComplexField ModeSuperposition::sample(const GridSpec& grid) const {
    grid.validate();
    std::vector<std::complex<double>> values(grid.node_count(), 0.0);
    bool truncated = false;
    for (const auto& [c, mode] : terms) {
        ComplexField part = sample_mode(mode, grid);
        truncated = truncated || part.truncation_warning();
        for (std::size_t k = 0; k < values.size(); ++k) values[k] += c * part.values()[k];
    }
    return ComplexField(grid, std::move(values), truncated);
}

}  // namespace spade
