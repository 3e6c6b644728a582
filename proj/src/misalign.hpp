#pragma once

#include <optional>
#include <utility>

#include "hg_basis.hpp"
#include "mech_modes.hpp"
#include "quantum_limits.hpp"

namespace spade {

// Receiver misalignment: lateral shift x_s along direction phi_x, mode
// rotation phi, receiver-plane waist w, downstream (mode-match + detector)
// efficiency eta_d, and per-channel loss parameters for the coupling curves.
struct MisalignConfig {
    double shift = 0.0;                 // x_s, meters, >= 0
    double receiver_waist = 0.0;        // w, meters
    double mode_rotation = 0.0;         // phi, radians
    double shift_direction = 0.0;       // phi_x, radians
    double downstream_efficiency = 1.0; // eta_d in (0, 1]
    double channel_eta00 = 1.0;         // eta0_00 in (0, 1]
    double channel_eta10 = 1.0;         // eta0_10 in (0, 1]

    void validate() const;
};

struct EfficiencyResult {
    double eta = 0.0;             // quantum efficiency in (0, 1]
    double imprecision = 0.0;     // theta units, rad^2/Hz; inf when singular
    enum class Method { closed_form, numeric } method = Method::closed_form;
    bool singular = false;        // sensitivity null (denominator zero / no slope)
};

// Closed-form sensitivity model:
//   S = (theta_D^2/8N) (1/eta_d) e^{x_s^2/w^2} sec^2(phi)
//       / (1 - (x_s^2/2w^2)(1 + cos(phi - 2 phi_x)/cos(phi)))^2
// Throws when cos(phi) = 0.
EfficiencyResult efficiency_closed_form(const MisalignConfig& cfg, const BeamParams& beam);

// Idealized waist-matched channel coupling versus lateral offset x:
//   eta00 = eta0_00 e^{-x^2/w^2}
//   eta10 = eta0_10 (x^2/w^2) e^{-x^2/w^2} cos^2(phi_x)
std::pair<double, double> coupling_efficiency(const MisalignConfig& cfg, double x);

// Receiver detection modes: the shifted fundamental and the shifted, rotated
// first-order superposition cos(phi) u10 + sin(phi) u01.
struct DetectionModes {
    OpticalMode fundamental;       // u_det^00
    ModeSuperposition first_order; // u_det^10
};

DetectionModes detection_modes(const MisalignConfig& cfg, double waist);

// Overlap-route efficiency from the detected photon flux
// N_det(z0) = N |<u_det|u_ref(z0)>|^2 with the exact phase screen.
//
// The static misalignment overlap acts as a local oscillator that beats in
// phase with the scattered component at the detector (the propagation to the
// receiver rotates successive HG orders by the Gouy phase), so the detected
// amplitude is A(z0) = Re c(0) + Im c(z0) with c = <u_det|u_ref>. The shot
// noise 2 N_det over the squared flux slope then reduces to
// S_imp_det = 1/(2 eta_d N A'^2), which this routine evaluates with a
// central-difference A' over a probe displacement set by probe_phase = 2k dz0.
//
// Receiver-plane geometry enters through the exact scaling x_s w0/w: overlaps
// within the Gaussian family depend only on shift/waist ratios.
EfficiencyResult efficiency_numeric(const MisalignConfig& cfg, const BeamParams& beam,
                                    const ModeShape& shape, const GridSpec& grid,
                                    double probe_phase = 1e-4,
                                    const std::optional<ModeSuperposition>& detection_override = std::nullopt);

// |<u_det|u_perp>|^2 * eta_d with u_perp built by Gram-Schmidt of phi*u_in:
// the small-displacement limit the numeric route should reproduce. Exposed
// for cross-checks.
double efficiency_overlap_route(const MisalignConfig& cfg, const BeamParams& beam,
                                const ModeShape& shape, const GridSpec& grid);

// Imprecision of the HG00-port readout, theta units:
//   S = (2/w_r)^2 (dN00/dz0)^{-2} S_shot(N00).
// Diverges at x_s = 0 where the HG00 power is quadratic in z0.
struct Hg00Imprecision {
    double value = 0.0;  // rad^2/Hz, inf when unbounded
    bool unbounded = false;
    const char* note = "";
};

Hg00Imprecision hg00_imprecision(const MisalignConfig& cfg, const BeamParams& beam,
                                 const ModeShape& shape, double ribbon_width,
                                 const GridSpec& grid, double probe_phase = 1e-4);

}  // namespace spade
