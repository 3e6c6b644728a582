#pragma once

#include "mech_modes.hpp"

namespace spade {

// Laser beam incident on (and reflected from) the resonator. Derived
// quantities: photon flux N = P lambda/(h c), wavenumber k = 2 pi/lambda,
// diffraction angle theta_D = lambda/(pi w0).
struct BeamParams {
    double wavelength = 0.0;  // lambda, meters
    double waist = 0.0;       // w0 on the sample, meters
    double power = 0.0;       // reflected power P, watts

    void validate() const;
    double photon_flux() const;
    double wavenumber() const;
    double diffraction_angle() const;
};

// Shot-noise-limited displacement imprecision 1/(8 N k^2 beta_perp^2), m^2/Hz.
double imprecision_displacement(double photon_flux, double wavenumber, double beta_perp);

// Radiation-pressure backaction force PSD 8 hbar^2 N k^2 beta_sq, N^2/Hz.
double backaction_force(double photon_flux, double wavenumber, double beta_sq);

// Heisenberg-limited angular readout theta_D^2/(8N), rad^2/Hz.
double imprecision_angle(const BeamParams& beam);

// Quantum torque backaction of the optical-lever readout, (N m)^2/Hz.
// Equal to (w_r/2)^2 * backaction_force in the large-ribbon torsion limit and
// saturating S_theta^imp * S_tau = hbar^2.
double backaction_torque(const BeamParams& beam);

// Zero-point angular displacement PSD. Two conventions are surfaced: the
// as-written hbar Q/(2 I omega^2) and the resonant form 4 hbar Q/(I omega^2),
// which differ by a factor of 8 (see report_note).
struct ZeroPointPsd {
    double as_written = 0.0;
    double resonant = 0.0;
    const char* note = "";
};

ZeroPointPsd zero_point_psd(const MechanicalMode& mode);

struct PhononBudget {
    double n_imp = 0.0;  // S_imp / (2 S_zp)
    double n_ba = 0.0;   // 1 / (16 n_imp eta)
    double n_th = 0.0;   // k_B T0 / (hbar omega_m)
    double s_zp = 0.0;   // the zero-point PSD the budget was computed against
};

PhononBudget phonon_budget(double s_imp, double s_zp, double eta, const MechanicalMode& mode);

// Ideal-derivative-feedback occupation limits.
struct CoolingLimit {
    double n_m = 0.0;        // 2 sqrt(n_imp (n_ba + n_th)) - 1/2
    double eta_bound = 0.0;  // (1/sqrt(eta) - 1)/2
};

CoolingLimit cooling_limit(const PhononBudget& budget, double eta);

}  // namespace spade
