#include <doctest.h>

#include <cmath>
#include <vector>

#include "errors.hpp"
#include "rng.hpp"
#include "spectra.hpp"

using namespace spade;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kBoltzmann = 1.380649e-23;

MechanicalMode device_mode() {
    return {ModeShape::torsion({380e-6, 7e-3, 75e-9}), 52.5e3, 65e6, 2.8e-18, 295.0};
}

}  // namespace

TEST_CASE("thermal peak value and linewidth") {
    MechanicalMode mode = device_mode();
    const double peak = thermal_peak(mode);
    CHECK(peak == doctest::Approx(1.053666324e-11).epsilon(1e-9));
    CHECK(thermal_psd(mode, mode.frequency) == doctest::Approx(peak).epsilon(1e-12));

    // half height at omega_m +- Gamma/2
    const double f_half = mode.frequency + mode.linewidth() / (4 * kPi);
    CHECK(thermal_psd(mode, f_half) == doctest::Approx(peak / 2).epsilon(1e-9));

    // far wings fall off as 1/(f - f_m)^2
    const double d1 = 1000.0 * mode.linewidth() / (2 * kPi);
    const double d2 = 2000.0 * mode.linewidth() / (2 * kPi);
    const double ratio = thermal_psd(mode, mode.frequency + d1) /
                         thermal_psd(mode, mode.frequency + d2);
    CHECK(ratio == doctest::Approx(4.0).epsilon(1e-2));
}

TEST_CASE("equipartition integral") {
    MechanicalMode mode = device_mode();
    const double gamma = mode.linewidth();
    const double om_m = mode.angular_frequency();

    // trapezoid on an arctan-stretched detuning grid over +-1e4 Gamma
    const double span = std::atan(2.0e4);
    const int n = 40001;
    double integral = 0.0;
    double prev_f = 0.0, prev_v = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = -span + 2.0 * span * i / (n - 1);
        const double om = om_m + 0.5 * gamma * std::tan(u);
        const double f = om / (2 * kPi);
        const double v = thermal_psd(mode, f);
        if (i > 0) integral += 0.5 * (v + prev_v) * (f - prev_f);
        prev_f = f;
        prev_v = v;
    }
    const double expected = kBoltzmann * mode.bath_temperature /
                            (mode.moment_of_inertia * om_m * om_m);
    CHECK(std::abs(integral - expected) / expected < 1e-3);
}

TEST_CASE("model PSD composition") {
    MechanicalMode torsion = device_mode();
    std::vector<double> grid;
    for (double f = 45e3; f <= 55e3; f += 2.5) grid.push_back(f);

    // degenerate model: unit gain, zero floors
    NoiseModel bare;
    bare.gain = 1.0;
    bare.modes.push_back({torsion, 1.0});
    SpectrumRecord rec = model_psd(bare, grid);
    for (std::size_t i = 0; i < grid.size(); ++i)
        CHECK(rec.psd[i] == doctest::Approx(thermal_psd(torsion, grid[i])).epsilon(1e-12));

    // two modes give two local maxima
    MechanicalMode flexural = device_mode();
    flexural.shape = ModeShape::flexural({380e-6, 7e-3, 75e-9});
    flexural.frequency = 47e3;
    NoiseModel multi;
    multi.gain = 2.5e5;
    multi.imprecision_floor = 5e-22;
    multi.detector_floor = 1e-16;
    multi.modes.push_back({torsion, 1.0});
    multi.modes.push_back({flexural, 0.2});
    SpectrumRecord dual = model_psd(multi, grid);
    int maxima = 0;
    for (std::size_t i = 1; i + 1 < dual.psd.size(); ++i)
        if (dual.psd[i] > dual.psd[i - 1] && dual.psd[i] > dual.psd[i + 1]) ++maxima;
    CHECK(maxima == 2);

    // floors enter once, additively
    NoiseModel single = multi;
    single.modes = {multi.modes[0]};
    NoiseModel other = multi;
    other.modes = {multi.modes[1]};
    SpectrumRecord a = model_psd(single, grid), b = model_psd(other, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double floors = multi.gain * multi.imprecision_floor + multi.detector_floor;
        CHECK(dual.psd[i] == doctest::Approx(a.psd[i] + b.psd[i] - floors).epsilon(1e-12));
    }

    NoiseModel invalid = multi;
    invalid.gain = 0.0;
    CHECK_THROWS_AS(model_psd(invalid, grid), ValidationError);
}

TEST_CASE("periodogram statistics and determinism") {
    NoiseModel model;
    model.gain = 1.0;
    model.detector_floor = 2.0;
    std::vector<double> grid;
    for (int i = 0; i < 400; ++i) grid.push_back(1000.0 + i);

    SpectrumRecord a = synth_periodogram(model, grid, 50, 1234);
    SpectrumRecord b = synth_periodogram(model, grid, 50, 1234);
    CHECK(a.psd == b.psd);  // same seed, identical realization
    CHECK(a.n_avg == 50);

    double mean = 0.0;
    for (std::size_t i = 0; i < a.psd.size(); ++i) {
        CHECK(a.psd[i] >= 0.0);
        mean += a.psd[i] / model.detector_floor;
    }
    mean /= a.psd.size();
    CHECK(std::abs(mean - 1.0) < 3.0 / std::sqrt(2.0 * 50 * a.psd.size()));
}

TEST_CASE("periodogram bin fluctuation follows 1/sqrt(n_avg)") {
    NoiseModel model;
    model.gain = 1.0;
    model.detector_floor = 1.0;
    const std::vector<double> grid{100.0, 200.0, 300.0, 400.0, 500.0,
                                   600.0, 700.0, 800.0, 900.0, 1000.0};
    const int n_avg = 16;
    const int draws = 10000;

    std::vector<double> sum(grid.size(), 0.0), sum_sq(grid.size(), 0.0);
    for (int d = 0; d < draws; ++d) {
        SpectrumRecord rec = synth_periodogram(model, grid, n_avg, 5000 + d);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            sum[i] += rec.psd[i];
            sum_sq[i] += rec.psd[i] * rec.psd[i];
        }
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double m = sum[i] / draws;
        const double var = sum_sq[i] / draws - m * m;
        CHECK(std::abs(m - 1.0) < 0.01);  // expectation equals the model
        CHECK(std::abs(std::sqrt(var) - 1.0 / std::sqrt(n_avg)) < 0.015);
    }
}

TEST_CASE("ringdown synthesis") {
    MechanicalMode mode = device_mode();
    const double tau = 2.0 * mode.quality_factor / mode.angular_frequency();
    CHECK(tau == doctest::Approx(394.0979543).epsilon(1e-9));

    RingdownRecord rec = synth_ringdown(mode, 800.0, 1.0, 1.0, 0.0, 99);
    CHECK(rec.amplitude.front() == doctest::Approx(1.0).epsilon(1e-12));
    // at t = tau the envelope has decayed to 1/e (noiseless)
    const auto idx = static_cast<std::size_t>(tau);
    CHECK(rec.amplitude[idx] == doctest::Approx(std::exp(-rec.time[idx] / tau)).epsilon(1e-9));

    RingdownRecord noisy = synth_ringdown(mode, 800.0, 1.0, 1.0, 0.01, 99);
    RingdownRecord same = synth_ringdown(mode, 800.0, 1.0, 1.0, 0.01, 99);
    CHECK(noisy.amplitude == same.amplitude);
    CHECK_THROWS_AS(synth_ringdown(mode, 0.5, 1.0, 1.0, 0.0, 1), ValidationError);
}

TEST_CASE("shot scaling series") {
    std::vector<double> powers{1e-4, 2e-4, 4e-4, 8e-4};
    auto clean = shot_scaling_series(powers, 3e-13, 0.0, 0.0, 1);
    CHECK(clean[1].psd == doctest::Approx(2.0 * clean[0].psd).epsilon(1e-12));
    CHECK(clean[2].psd == doctest::Approx(2.0 * clean[1].psd).epsilon(1e-12));

    auto dark = shot_scaling_series({0.0, 1e-4, 2e-4}, 3e-13, 7e-17, 0.0, 1);
    CHECK(dark[0].psd == doctest::Approx(7e-17).epsilon(1e-12));
}

TEST_CASE("knife profile synthesis") {
    std::vector<double> xs{-3e-4, -1e-4, 0.0, 1e-4, 3e-4};
    auto profile = synth_knife_profile(xs, 1.0, 0.0, 150e-6, 0.05, 0.0, 3);
    CHECK(profile[2].power == doctest::Approx(0.55).epsilon(1e-12));  // P0/2 + baseline
    CHECK(profile.front().power < profile.back().power);
    CHECK(profile.back().power == doctest::Approx(1.05).epsilon(1e-3));
}

TEST_CASE("spectrum record validation") {
    SpectrumRecord rec;
    rec.frequency = {1.0, 2.0, 2.0};
    rec.psd = {1.0, 1.0, 1.0};
    CHECK_THROWS_AS(rec.validate(), ValidationError);
    rec.frequency = {1.0, 2.0};
    CHECK_THROWS_AS(rec.validate(), ValidationError);  // length mismatch
    rec.psd = {1.0, -1.0};
    CHECK_THROWS_AS(rec.validate(), ValidationError);
}
