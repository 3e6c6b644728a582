#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "grid.hpp"
#include "hg_basis.hpp"
#include "mech_modes.hpp"

namespace spade {

// Overlap scalars coupling the modeshape-weighted incident mode to the
// incident and orthogonal scattered optical modes:
//   beta_parallel = <phi u_in | u_in>
//   beta_perp     = <phi u_in | u_perp>
//   beta_sq       = <u_in phi | u_in phi>
struct CouplingResult {
    double beta_parallel = 0.0;
    double beta_perp = 0.0;
    double beta_sq = 0.0;
    // Richardson-style estimate: max change of any beta under one grid doubling.
    double convergence = 0.0;
    bool truncation_warning = false;
};

CouplingResult couplings(const OpticalMode& u_in, const OpticalMode& u_perp,
                         const ModeShape& shape, const GridSpec& grid);

// Incident mode reflecting off a displaced surface z(x,y) = z0 * phi(x,y).
struct ScatteringState {
    OpticalMode incident;
    const ModeShape* shape = nullptr;
    double displacement = 0.0;  // z0, meters
    double wavenumber = 0.0;    // k = 2 pi / lambda, rad/m

    void validate() const;
    // |2 k z0| max|phi| > 0.1 puts the linearized expansion in doubt.
    bool linearization_suspect() const;
};

struct ReflectedField {
    ComplexField field;
    bool linearization_flag = false;  // set when linearization_suspect()
};

// Exact phase screen u_in e^{2 i k z0 phi}, or its first-order truncation
// u_in + 2 i k z0 (beta_par u_in + beta_perp u_perp) when linearize is set.
// If u_perp is not supplied, it is built by Gram-Schmidt of phi*u_in against
// u_in on the given grid.
ReflectedField reflected_field(const ScatteringState& state, const GridSpec& grid,
                               bool linearize,
                               const std::optional<OpticalMode>& u_perp = std::nullopt);

struct CouplingScanRow {
    double y0 = 0.0;       // beam position along the ribbon axis, meters
    double beta10 = 0.0;   // <u10 phi(.,.-y0) u00>
    double beta01 = 0.0;   // <u01 phi(.,.-y0) u00>
    double dphidx = 0.0;   // toy-model proxy d phi/dx at (0, y0)
    double dphidy = 0.0;   //                d phi/dy at (0, y0)
    bool off_ribbon = false;
};

struct CouplingScan {
    std::vector<CouplingScanRow> rows;
    bool spot_size_warning = false;  // spot not small against the ribbon
};

// Translate the beam along the torsion axis (x = 0) and record the first-order
// couplings together with the local-derivative proxies they approximate.
CouplingScan coupling_scan(const OpticalMode& u_in, const ModeShape& shape,
                           double y0_min, double y0_max, int n_points,
                           const GridSpec& grid);

}  // namespace spade
