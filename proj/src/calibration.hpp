#pragma once

#include <cstdint>
#include <vector>

#include "fit.hpp"
#include "overlap.hpp"
#include "quantum_limits.hpp"
#include "spectra.hpp"

namespace spade {

struct CalibrationOptions {
    // Lorentzian wing band, in units of the fitted linewidth, excluding the
    // contaminated core. The floor is additionally constrained by the outer
    // deciles of the grid (where the thermal tail has died off), matching the
    // floor initializer; with a narrow wing band alone the floor term is
    // unidentifiable for high-Q peaks.
    double wing_lo_gammas = 2.0;
    double wing_hi_gammas = 100.0;
    double floor_fraction = 0.05;  // outer fraction of bins per side kept for the floor

    int bootstrap_resamples = 200;
    std::uint64_t bootstrap_seed = 20250901;
    SimplexOptions simplex{};
};

struct CalibrationResult {
    double gain = 0.0;              // g, V^2/rad^2
    double center_frequency = 0.0;  // Hz
    double linewidth_hz = 0.0;      // FWHM of the fitted Lorentzian, Hz
    double thermal_peak = 0.0;      // pinned physics peak, rad^2/Hz
    double floor = 0.0;             // calibrated total floor B/g, rad^2/Hz
    double detector_mean = 0.0;     // V^2/Hz
    double imprecision = 0.0;       // S_imp = (B - detector)/g, rad^2/Hz
    double eta = 0.0;               // theta_D^2/(8N) / S_imp

    double gain_uncertainty = 0.0;
    double center_frequency_uncertainty = 0.0;
    double linewidth_uncertainty = 0.0;
    double imprecision_uncertainty = 0.0;
    double eta_uncertainty = 0.0;

    FitReport fit;
};

// Thermal-wing bootstrap calibration: fit the averaged periodogram to
// amplitude/(1 + 4 (omega - omega_c)^2/Gamma^2) + B over the wing/floor
// window, pin the amplitude to the thermal peak of `mode` to obtain the gain,
// subtract the detector contribution and convert the floor to an angular
// imprecision and quantum efficiency.
CalibrationResult calibrate_spectrum(const SpectrumRecord& raw, const SpectrumRecord& detector,
                                     const MechanicalMode& mode, const BeamParams& beam,
                                     const CalibrationOptions& opts = {});

// Calibrated spectrum (raw - detector_mean)/g in angular units.
SpectrumRecord calibrated_spectrum(const SpectrumRecord& raw, const CalibrationResult& cal);

// Linear fit S_V = slope P + intercept with a quadratic alternative; the
// "shot-consistent" flag is granted when the quadratic term does not improve
// the residuals beyond `f_threshold` (an F-ratio).
FitReport fit_shot_scaling(const std::vector<ShotScalingPoint>& series, double f_threshold = 10.0);

struct KnifeEdgeOptions {
    int bootstrap_resamples = 100;
    std::uint64_t bootstrap_seed = 20250902;
    SimplexOptions simplex{};
};

// P(x) = amplitude/2 (1 + s erf(sqrt(2)(x - edge)/waist)) + baseline,
// s picked from the dominant data slope. Parameters: waist, edge, amplitude,
// baseline, sign.
FitReport fit_knife_edge(const std::vector<KnifeEdgePoint>& profile,
                         const KnifeEdgeOptions& opts = {});

struct RingdownOptions {
    int bootstrap_resamples = 100;
    std::uint64_t bootstrap_seed = 20250903;
    SimplexOptions simplex{};
};

// Weighted fit of A0 e^{-t/tau} + floor; quality factor Q = pi f_m tau.
FitReport fit_ringdown(const RingdownRecord& record, double frequency_hz,
                       const RingdownOptions& opts = {});

struct CouplingDataPoint {
    double x = 0.0;      // receiver offset, m
    double eta00 = 0.0;  // HG00 channel efficiency
    double eta10 = 0.0;  // HG10 channel efficiency
};

struct CouplingFitOptions {
    // The HG10 channel determines eta10_0 and phi_x only through
    // eta10_0 cos^2(phi_x); phi_x is pinned at this value and the product is
    // split accordingly. Every report carries the degeneracy flag.
    double phi_x = 0.78539816339744831;  // 45 deg
    SimplexOptions simplex{};
};

// Joint fit of both channel-coupling curves sharing the receiver waist w.
// Parameters: w, phi_x, eta00_0, eta10_0.
FitReport fit_coupling_model(const std::vector<CouplingDataPoint>& data,
                             const CouplingFitOptions& opts = {});

struct AreaScanRow {
    double y0 = 0.0;
    double torsion = 0.0;   // normalized <theta^2> of the torsion peak
    double flexural = 0.0;  // normalized <theta^2> of the flexural peak
};

// Toy-model peak areas versus beam position: the monitored port mixes the two
// first-order modes under the receiver rotation phi, so the torsion peak
// scales as cos^2(phi) beta10^2 and the flexural peak as sin^2(phi) beta01^2.
// Both columns share one normalization (joint maximum -> 1).
std::vector<AreaScanRow> area_scan_model(double phi_rotation, const CouplingScan& torsion_scan,
                                         const CouplingScan& flexural_scan);

}  // namespace spade
