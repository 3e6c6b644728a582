#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mech_modes.hpp"

namespace spade {

enum class PsdUnits { volts2_per_hz, rad2_per_hz, m2_per_hz };

std::string units_tag(PsdUnits u);
PsdUnits parse_units_tag(const std::string& tag);

// Single-sided PSD on a strictly increasing frequency grid.
struct SpectrumRecord {
    std::vector<double> frequency;  // Hz
    std::vector<double> psd;
    PsdUnits units = PsdUnits::volts2_per_hz;
    int n_avg = 1;

    void validate() const;
};

// Thermal (Lorentzian) angular displacement PSD, rad^2/Hz:
//   S(f) = S_peak / (1 + 4 (omega - omega_m)^2 / Gamma_m^2),
//   S_peak = 4 k_B T0 Q / (I omega_m^3).
// The peak value carries the omega^-3 power required for correct units and
// equipartition; the corresponding omega^-1 form appears in print and is
// reproduced in reports as a note only.
double thermal_psd(const MechanicalMode& mode, double frequency_hz);
double thermal_peak(const MechanicalMode& mode);

struct NoiseContribution {
    MechanicalMode mode;
    double conversion = 1.0;  // multiplies the mode's angular PSD in this port
};

// Voltage-domain noise model of a calibrated port:
//   S_V(f) = gain * (sum_m conv_m * thermal_m(f) + imprecision) + detector.
struct NoiseModel {
    std::vector<NoiseContribution> modes;
    double imprecision_floor = 0.0;  // rad^2/Hz
    double detector_floor = 0.0;     // V^2/Hz
    double gain = 0.0;               // V^2/rad^2

    void validate() const;
};

SpectrumRecord model_psd(const NoiseModel& model, const std::vector<double>& grid_hz);

// One n_avg-averaged periodogram realization: each bin is the model value
// times an independent chi^2_{2 n_avg}/(2 n_avg) factor.
SpectrumRecord synth_periodogram(const NoiseModel& model, const std::vector<double>& grid_hz,
                                 int n_avg, std::uint64_t seed);

struct RingdownRecord {
    std::vector<double> time;       // s, strictly increasing
    std::vector<double> amplitude;  // arbitrary units
    double noise_floor = 0.0;

    void validate() const;
};

// Envelope decay A0 e^{-t/tau} + floor-level fluctuations, tau = 2 Q / omega_m.
RingdownRecord synth_ringdown(const MechanicalMode& mode, double duration, double dt,
                              double initial_amplitude, double noise_floor, std::uint64_t seed);

struct ShotScalingPoint {
    double power = 0.0;  // W
    double psd = 0.0;    // V^2/Hz
};

// S_V = slope * P + intercept with fractional scatter.
std::vector<ShotScalingPoint> shot_scaling_series(const std::vector<double>& powers,
                                                  double slope, double intercept,
                                                  double fractional_scatter, std::uint64_t seed);

struct KnifeEdgePoint {
    double position = 0.0;  // m
    double power = 0.0;     // W
};

// Reflective knife-edge profile P0/2 (1 + erf(sqrt(2)(x - x0)/w0)) + baseline
// with fractional scatter; used to exercise the waist fit.
std::vector<KnifeEdgePoint> synth_knife_profile(const std::vector<double>& positions,
                                                double total_power, double edge_position,
                                                double waist, double baseline,
                                                double fractional_scatter, std::uint64_t seed);

}  // namespace spade
