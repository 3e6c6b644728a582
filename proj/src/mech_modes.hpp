#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "grid.hpp"

namespace spade {

struct RibbonGeometry {
    double width = 0.0;      // w_r, meters
    double length = 0.0;     // L, meters
    double thickness = 0.0;  // informational only

    void validate() const;
};

// Mechanical modeshape phi(x,y), dimensionless, normalized so max|phi| = 1.
// The ribbon is centered at the origin: torsion axis x = 0, y in [-L/2, L/2].
// Evaluation outside the ribbon domain returns 0 (the beam misses the ribbon).
class ModeShape {
public:
    enum class Kind { torsion_fundamental, flexural_fundamental, gridded };

    static ModeShape torsion(const RibbonGeometry& geo);
    static ModeShape flexural(const RibbonGeometry& geo);
    // Gridded samples (row-major, y slow), rescaled so max|phi| = 1.
    static ModeShape gridded(const GridSpec& grid, std::vector<double> values,
                             bool coarse_warning = false);

    Kind kind() const { return kind_; }
    const RibbonGeometry& geometry() const { return geo_; }
    const GridSpec& grid() const { return grid_; }
    bool coarse_grid_warning() const { return coarse_warning_; }

    double eval(double x, double y) const;
    // (d phi/dx, d phi/dy); analytic for the closed-form kinds, central
    // differences with one grid cell for gridded shapes.
    std::pair<double, double> gradient(double x, double y) const;

    // Extent of the support, used for domain checks and warnings.
    double half_width() const;
    double half_length() const;

private:
    ModeShape() = default;

    Kind kind_ = Kind::torsion_fundamental;
    RibbonGeometry geo_{};
    GridSpec grid_{};
    std::vector<double> values_;
    bool coarse_warning_ = false;

    double interp(double x, double y) const;
};

// Gridded-modeshape text format:
//   line 1: nx ny
//   line 2: x_min x_max y_min y_max   (meters)
//   then nx*ny whitespace-separated values, row-major in y then x.
ModeShape load_grid_shape(std::istream& in);
ModeShape load_grid_shape_file(const std::string& path);
void write_grid_shape(std::ostream& out, const GridSpec& grid, const std::vector<double>& values);

struct MechanicalMode {
    ModeShape shape;
    double frequency = 0.0;          // f_m, Hz
    double quality_factor = 0.0;     // Q_m
    double moment_of_inertia = 0.0;  // I, kg m^2
    double bath_temperature = 0.0;   // T_0, K

    void validate() const;
    double angular_frequency() const;      // omega_m = 2 pi f_m
    double linewidth() const;              // Gamma_m = omega_m / Q_m, rad/s
};

}  // namespace spade
