#include "spectra.hpp"

#include <algorithm>
#include <cmath>

#include "constants.hpp"
#include "errors.hpp"
#include "rng.hpp"

namespace spade {

std::string units_tag(PsdUnits u) {
    switch (u) {
        case PsdUnits::volts2_per_hz: return "V^2/Hz";
        case PsdUnits::rad2_per_hz: return "rad^2/Hz";
        case PsdUnits::m2_per_hz: return "m^2/Hz";
    }
    return "V^2/Hz";
}

PsdUnits parse_units_tag(const std::string& tag) {
    if (tag == "V^2/Hz") return PsdUnits::volts2_per_hz;
    if (tag == "rad^2/Hz") return PsdUnits::rad2_per_hz;
    if (tag == "m^2/Hz") return PsdUnits::m2_per_hz;
    throw ParseError("unknown PSD units tag '" + tag + "'");
}

void SpectrumRecord::validate() const {
    if (frequency.size() != psd.size())
        throw ValidationError("SpectrumRecord: grid and values differ in length");
    if (frequency.empty()) throw ValidationError("SpectrumRecord: empty record");
    if (n_avg < 1) throw ValidationError("SpectrumRecord: n_avg must be >= 1");
    for (std::size_t i = 0; i < frequency.size(); ++i) {
        if (!std::isfinite(frequency[i]) || !std::isfinite(psd[i]))
            throw ValidationError("SpectrumRecord: non-finite entry");
        if (psd[i] < 0.0) throw ValidationError("SpectrumRecord: negative PSD");
        if (i > 0 && frequency[i] <= frequency[i - 1])
            throw ValidationError("SpectrumRecord: frequency grid must be strictly increasing");
    }
}

double thermal_peak(const MechanicalMode& mode) {
    mode.validate();
    const double om = mode.angular_frequency();
    return 4.0 * constants::k_B * mode.bath_temperature * mode.quality_factor /
           (mode.moment_of_inertia * om * om * om);
}

double thermal_psd(const MechanicalMode& mode, double frequency_hz) {
    const double peak = thermal_peak(mode);
    const double om = 2.0 * constants::pi * frequency_hz;
    const double det = 2.0 * (om - mode.angular_frequency()) / mode.linewidth();
    return peak / (1.0 + det * det);
}

void NoiseModel::validate() const {
    if (!(gain > 0.0)) throw ValidationError("NoiseModel: gain must be positive");
    if (imprecision_floor < 0.0) throw ValidationError("NoiseModel: imprecision floor must be >= 0");
    if (detector_floor < 0.0) throw ValidationError("NoiseModel: detector floor must be >= 0");
    for (const auto& c : modes) {
        c.mode.validate();
        if (!(c.conversion >= 0.0)) throw ValidationError("NoiseModel: conversion must be >= 0");
    }
}

SpectrumRecord model_psd(const NoiseModel& model, const std::vector<double>& grid_hz) {
    model.validate();
    SpectrumRecord rec;
    rec.frequency = grid_hz;
    rec.psd.resize(grid_hz.size());
    rec.units = PsdUnits::volts2_per_hz;
    rec.n_avg = 1;
    for (std::size_t i = 0; i < grid_hz.size(); ++i) {
        double theta = model.imprecision_floor;
        for (const auto& c : model.modes) theta += c.conversion * thermal_psd(c.mode, grid_hz[i]);
        rec.psd[i] = model.gain * theta + model.detector_floor;
    }
    rec.validate();
    return rec;
}

SpectrumRecord synth_periodogram(const NoiseModel& model, const std::vector<double>& grid_hz,
                                 int n_avg, std::uint64_t seed) {
    if (n_avg < 1) throw ValidationError("synth_periodogram: n_avg must be >= 1");
    SpectrumRecord rec = model_psd(model, grid_hz);
    Rng rng(seed);
    for (double& v : rec.psd) v *= rng.periodogram_factor(n_avg);
    rec.n_avg = n_avg;
    rec.validate();
    return rec;
}

void RingdownRecord::validate() const {
    if (time.size() != amplitude.size())
        throw ValidationError("RingdownRecord: time and amplitude differ in length");
    if (time.size() < 2) throw ValidationError("RingdownRecord: record too short");
    for (std::size_t i = 1; i < time.size(); ++i)
        if (time[i] <= time[i - 1])
            throw ValidationError("RingdownRecord: time must be strictly increasing");
}

RingdownRecord synth_ringdown(const MechanicalMode& mode, double duration, double dt,
                              double initial_amplitude, double noise_floor, std::uint64_t seed) {
    mode.validate();
    if (!(dt > 0.0) || !(duration > dt))
        throw ValidationError("synth_ringdown: need duration > dt > 0");
    if (noise_floor < 0.0) throw ValidationError("synth_ringdown: noise floor must be >= 0");

    const double tau = 2.0 * mode.quality_factor / mode.angular_frequency();
    Rng rng(seed);
    RingdownRecord rec;
    rec.noise_floor = noise_floor;
    const auto n = static_cast<std::size_t>(duration / dt) + 1;
    rec.time.reserve(n);
    rec.amplitude.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = i * dt;
        double a = initial_amplitude * std::exp(-t / tau) + noise_floor;
        if (noise_floor > 0.0) a += 0.5 * noise_floor * rng.normal();
        rec.time.push_back(t);
        rec.amplitude.push_back(std::max(a, 0.0));
    }
    rec.validate();
    return rec;
}

std::vector<ShotScalingPoint> shot_scaling_series(const std::vector<double>& powers,
                                                  double slope, double intercept,
                                                  double fractional_scatter, std::uint64_t seed) {
    if (powers.empty()) throw ValidationError("shot_scaling_series: no powers given");
    for (double p : powers)
        if (!(p >= 0.0)) throw ValidationError("shot_scaling_series: powers must be >= 0");
    if (fractional_scatter < 0.0)
        throw ValidationError("shot_scaling_series: scatter must be >= 0");

    Rng rng(seed);
    std::vector<ShotScalingPoint> out;
    out.reserve(powers.size());
    for (double p : powers) {
        double v = slope * p + intercept;
        if (fractional_scatter > 0.0) v *= 1.0 + fractional_scatter * rng.normal();
        out.push_back({p, std::max(v, 0.0)});
    }
    return out;
}

std::vector<KnifeEdgePoint> synth_knife_profile(const std::vector<double>& positions,
                                                double total_power, double edge_position,
                                                double waist, double baseline,
                                                double fractional_scatter, std::uint64_t seed) {
    if (!(total_power > 0.0)) throw ValidationError("synth_knife_profile: power must be positive");
    if (!(waist > 0.0)) throw ValidationError("synth_knife_profile: waist must be positive");
    if (fractional_scatter < 0.0)
        throw ValidationError("synth_knife_profile: scatter must be >= 0");

    Rng rng(seed);
    std::vector<KnifeEdgePoint> out;
    out.reserve(positions.size());
    for (double x : positions) {
        double p = 0.5 * total_power *
                       (1.0 + std::erf(std::sqrt(2.0) * (x - edge_position) / waist)) +
                   baseline;
        if (fractional_scatter > 0.0) p += fractional_scatter * total_power * rng.normal();
        out.push_back({x, p});
    }
    return out;
}

}  // namespace spade
