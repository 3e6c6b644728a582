#include "quantum_limits.hpp"

#include <cmath>

#include "constants.hpp"
#include "errors.hpp"

namespace spade {

using constants::hbar;
using constants::k_B;

void BeamParams::validate() const {
    if (!(wavelength > 0.0)) throw ValidationError("BeamParams: wavelength must be positive");
    if (!(waist > 0.0)) throw ValidationError("BeamParams: waist must be positive");
    if (!(power > 0.0)) throw ValidationError("BeamParams: power must be positive");
}

double BeamParams::photon_flux() const { return power * wavelength / (constants::h * constants::c); }

double BeamParams::wavenumber() const { return 2.0 * constants::pi / wavelength; }

double BeamParams::diffraction_angle() const { return wavelength / (constants::pi * waist); }

double imprecision_displacement(double photon_flux, double wavenumber, double beta_perp) {
    if (!(photon_flux > 0.0) || !(wavenumber > 0.0))
        throw ValidationError("imprecision_displacement: flux and wavenumber must be positive");
    if (beta_perp == 0.0)
        throw ValidationError("imprecision_displacement: beta_perp = 0, no signal in the sorted port");
    return 1.0 / (8.0 * photon_flux * wavenumber * wavenumber * beta_perp * beta_perp);
}

double backaction_force(double photon_flux, double wavenumber, double beta_sq) {
    if (!(photon_flux > 0.0) || !(wavenumber > 0.0))
        throw ValidationError("backaction_force: flux and wavenumber must be positive");
    if (beta_sq < 0.0) throw ValidationError("backaction_force: beta_sq must be non-negative");
    return 8.0 * hbar * hbar * photon_flux * wavenumber * wavenumber * beta_sq;
}

double imprecision_angle(const BeamParams& beam) {
    beam.validate();
    const double theta_d = beam.diffraction_angle();
    return theta_d * theta_d / (8.0 * beam.photon_flux());
}

double backaction_torque(const BeamParams& beam) {
    beam.validate();
    const double theta_d = beam.diffraction_angle();
    return 8.0 * hbar * hbar * beam.photon_flux() / (theta_d * theta_d);
}

ZeroPointPsd zero_point_psd(const MechanicalMode& mode) {
    mode.validate();
    const double om = mode.angular_frequency();
    ZeroPointPsd out;
    out.as_written = hbar * mode.quality_factor / (2.0 * mode.moment_of_inertia * om * om);
    out.resonant = 4.0 * hbar * mode.quality_factor / (mode.moment_of_inertia * om * om);
    out.note = "resonant form exceeds the as-written expression by a factor of 8; "
               "pass the intended value to phonon_budget explicitly";
    return out;
}

PhononBudget phonon_budget(double s_imp, double s_zp, double eta, const MechanicalMode& mode) {
    mode.validate();
    if (!(s_imp > 0.0)) throw ValidationError("phonon_budget: imprecision must be positive");
    if (!(s_zp > 0.0)) throw ValidationError("phonon_budget: zero-point PSD must be positive");
    if (!(eta > 0.0) || eta > 1.0) throw ValidationError("phonon_budget: eta must be in (0, 1]");

    PhononBudget b;
    b.n_imp = s_imp / (2.0 * s_zp);
    b.n_ba = 1.0 / (16.0 * b.n_imp * eta);
    b.n_th = k_B * mode.bath_temperature / (hbar * mode.angular_frequency());
    b.s_zp = s_zp;
    return b;
}

CoolingLimit cooling_limit(const PhononBudget& budget, double eta) {
    if (!(budget.n_imp > 0.0) || !(budget.n_ba >= 0.0) || !(budget.n_th >= 0.0))
        throw ValidationError("cooling_limit: invalid phonon budget");
    if (!(eta > 0.0) || eta > 1.0) throw ValidationError("cooling_limit: eta must be in (0, 1]");

    CoolingLimit out;
    out.n_m = 2.0 * std::sqrt(budget.n_imp * (budget.n_ba + budget.n_th)) - 0.5;
    out.eta_bound = 0.5 * (1.0 / std::sqrt(eta) - 1.0);
    return out;
}

}  // namespace spade
