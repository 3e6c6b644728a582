#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "grid.hpp"

namespace spade {

// One Hermite-Gauss basis element u_mn with waist w, lateral center offset and
// in-plane rotation. Normalized so the continuum inner product <u|u> = 1.
//
// Evaluation composes rotation before the offset subtraction: the point is
// rotated into the mode frame first, then the center is subtracted there.
struct OpticalMode {
    int m = 0, n = 0;        // HG indices, m+n <= 10 (10-channel sorter bound)
    double waist = 0.0;      // w, meters
    double center_x = 0.0;   // meters, in the mode frame
    double center_y = 0.0;
    double rotation = 0.0;   // radians, normalized to (-pi, pi] on validate()

    void validate() const;   // throws ValidationError
    OpticalMode normalized_rotation() const;
};

// Physicists' Hermite polynomial H_n(t) by the three-term recurrence.
double hermite(int n, double t);

// Normalized HG amplitude at a point, units 1/m.
double eval_hg(const OpticalMode& mode, double x, double y);

// Sample a mode on a grid. The truncation warning is set when any grid edge
// is closer than 2 waists to the mode center.
ComplexField sample_mode(const OpticalMode& mode, const GridSpec& grid);

// Real-coefficient superposition of HG modes (e.g. the rotated first-order
// detection mode cos(phi) u10 + sin(phi) u01).
struct ModeSuperposition {
    std::vector<std::pair<double, OpticalMode>> terms;

    double eval(double x, double y) const;
    ComplexField sample(const GridSpec& grid) const;
};

}  // namespace spade
