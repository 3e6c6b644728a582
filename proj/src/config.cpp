#include "config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "constants.hpp"
#include "errors.hpp"

namespace spade {

namespace {

// key, default, minimum (exclusive unless noted)
struct KeyDef {
    const char* key;
    double value;
};

// Nominal experiment values; everything overridable from the config file.
const KeyDef kDefaults[] = {
    {"beam.wavelength_m", 1.55e-6},
    {"beam.waist_m", 150e-6},
    {"beam.power_w", 2.5e-3},
    {"ribbon.width_m", 380e-6},
    {"ribbon.length_m", 7e-3},
    {"ribbon.thickness_m", 75e-9},
    {"mech.frequency_hz", 52.5e3},
    {"mech.quality_factor", 65e6},
    {"mech.moment_of_inertia_kgm2", 2.8e-18},
    {"mech.bath_temperature_k", 295.0},
    {"misalign.shift_m", 0.0},
    {"misalign.receiver_waist_m", 300e-6},
    {"misalign.mode_rotation_rad", 0.0},
    {"misalign.shift_direction_rad", 0.7853981633974483},
    {"misalign.downstream_efficiency", 1.0},
    {"misalign.channel_eta00", 0.50},
    {"misalign.channel_eta10", 0.67},
    {"measurement.imprecision_rad2_per_hz", 5e-22},
    {"measurement.zero_point_rad2_per_hz", 9e-20},
    {"measurement.eta", 0.14},
    {"numerics.grid_window_waists", 4.0},
    {"numerics.grid_nodes", 257.0},
    {"numerics.probe_phase", 1e-4},
    {"numerics.fit_rel_tol", 1e-9},
    {"numerics.fit_max_evals", 10000.0},
    {"numerics.wing_lo_gammas", 2.0},
    {"numerics.wing_hi_gammas", 100.0},
    {"numerics.floor_fraction", 0.05},
    {"numerics.bootstrap_resamples", 200.0},
    {"numerics.seed", 1.0},
    {"synth.gain_v2_per_rad2", 1e6},
    {"synth.imprecision_rad2_per_hz", 5e-22},
    {"synth.detector_floor_v2_per_hz", 1e-16},
    {"synth.n_avg", 100.0},
    {"synth.span_gammas", 10000.0},
    {"synth.rbw_gammas", 0.1},
    {"synth.ringdown_duration_s", 1200.0},
    {"synth.ringdown_dt_s", 1.0},
    {"synth.ringdown_amplitude", 1.0},
    {"synth.ringdown_floor", 0.0},
    {"synth.knife_points", 501.0},
    {"synth.knife_halfspan_m", 4e-4},
    {"synth.knife_power_w", 1.0},
    {"synth.knife_baseline_w", 0.0},
    {"synth.knife_noise", 0.01},
    {"synth.shot_points", 10.0},
    {"synth.shot_slope_v2_per_hz_per_w", 2e-13},
    {"synth.shot_intercept_v2_per_hz", 1e-16},
    {"synth.shot_noise", 0.02},
    {"synth.shot_pmin_w", 2.5e-4},
    {"synth.shot_pmax_w", 2.5e-3},
};

void check_positive(const ExperimentConfig& c, const char* key) {
    if (!(c.get(key) > 0.0))
        throw ValidationError(std::string("config: ") + key + " must be positive");
}

void check_non_negative(const ExperimentConfig& c, const char* key) {
    if (!(c.get(key) >= 0.0))
        throw ValidationError(std::string("config: ") + key + " must be non-negative");
}

void check_unit_interval(const ExperimentConfig& c, const char* key) {
    const double v = c.get(key);
    if (!(v > 0.0) || v > 1.0)
        throw ValidationError(std::string("config: ") + key + " must be in (0, 1]");
}

}  // namespace

ExperimentConfig::ExperimentConfig() {
    for (const auto& d : kDefaults) values_[d.key] = d.value;
}

ExperimentConfig ExperimentConfig::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    ExperimentConfig cfg;
    cfg.apply_stream(in, path);
    return cfg;
}

void ExperimentConfig::apply_stream(std::istream& in, const std::string& origin) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto first = line.find_first_not_of(" \t\r\n");
        if (first == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError(origin + ": expected 'key = value'", line_no);
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r\n");
            const auto b = s.find_last_not_of(" \t\r\n");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            set_text(key, value);
        } catch (const ValidationError& e) {
            throw ParseError(origin + ": " + e.what(), line_no);
        }
    }
}

void ExperimentConfig::set(const std::string& key, double value) {
    auto it = values_.find(key);
    if (it == values_.end()) throw ValidationError("config: unknown key '" + key + "'");
    if (!std::isfinite(value)) throw ValidationError("config: " + key + " must be finite");
    it->second = value;
}

void ExperimentConfig::set_text(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        while (pos < value.size() && std::isspace(static_cast<unsigned char>(value[pos]))) ++pos;
        if (pos != value.size()) throw std::invalid_argument("trailing");
        set(key, v);
    } catch (const ValidationError&) {
        throw;
    } catch (const std::exception&) {
        throw ValidationError("config: cannot parse value '" + value + "' for " + key);
    }
}

double ExperimentConfig::get(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ValidationError("config: unknown key '" + key + "'");
    return it->second;
}

void ExperimentConfig::validate() const {
    for (const char* key : {"beam.wavelength_m", "beam.waist_m", "beam.power_w",
                            "ribbon.width_m", "ribbon.length_m", "mech.frequency_hz",
                            "mech.quality_factor", "mech.moment_of_inertia_kgm2",
                            "mech.bath_temperature_k", "misalign.receiver_waist_m",
                            "measurement.imprecision_rad2_per_hz",
                            "measurement.zero_point_rad2_per_hz", "numerics.grid_window_waists",
                            "numerics.probe_phase", "numerics.fit_rel_tol",
                            "synth.gain_v2_per_rad2", "synth.rbw_gammas", "synth.span_gammas",
                            "synth.ringdown_duration_s", "synth.ringdown_dt_s",
                            "synth.knife_power_w", "synth.knife_halfspan_m", "synth.shot_pmin_w",
                            "synth.shot_pmax_w"})
        check_positive(*this, key);
    for (const char* key : {"ribbon.thickness_m", "misalign.shift_m",
                            "synth.imprecision_rad2_per_hz", "synth.detector_floor_v2_per_hz",
                            "synth.ringdown_floor", "synth.knife_baseline_w", "synth.knife_noise",
                            "synth.shot_intercept_v2_per_hz", "synth.shot_noise",
                            "numerics.seed"})
        check_non_negative(*this, key);
    for (const char* key : {"misalign.downstream_efficiency", "misalign.channel_eta00",
                            "misalign.channel_eta10", "measurement.eta"})
        check_unit_interval(*this, key);

    if (get("numerics.grid_nodes") < 17)
        throw ValidationError("config: numerics.grid_nodes must be at least 17");
    if (get("numerics.fit_max_evals") < 100)
        throw ValidationError("config: numerics.fit_max_evals must be at least 100");
    if (get("synth.n_avg") < 1)
        throw ValidationError("config: synth.n_avg must be at least 1");
    if (get("numerics.floor_fraction") < 0.0 || get("numerics.floor_fraction") > 0.4)
        throw ValidationError("config: numerics.floor_fraction must be in [0, 0.4]");
    if (get("numerics.wing_hi_gammas") <= get("numerics.wing_lo_gammas"))
        throw ValidationError("config: numerics.wing_hi_gammas must exceed wing_lo_gammas");
    if (get("synth.knife_points") < 6)
        throw ValidationError("config: synth.knife_points must be at least 6");
    if (get("synth.shot_points") < 3)
        throw ValidationError("config: synth.shot_points must be at least 3");
    if (get("numerics.bootstrap_resamples") < 0)
        throw ValidationError("config: numerics.bootstrap_resamples must be >= 0");
}

BeamParams ExperimentConfig::beam() const {
    BeamParams b{get("beam.wavelength_m"), get("beam.waist_m"), get("beam.power_w")};
    b.validate();
    return b;
}

RibbonGeometry ExperimentConfig::ribbon() const {
    RibbonGeometry g{get("ribbon.width_m"), get("ribbon.length_m"), get("ribbon.thickness_m")};
    g.validate();
    return g;
}

MisalignConfig ExperimentConfig::misalign() const {
    MisalignConfig m;
    m.shift = get("misalign.shift_m");
    m.receiver_waist = get("misalign.receiver_waist_m");
    m.mode_rotation = get("misalign.mode_rotation_rad");
    m.shift_direction = get("misalign.shift_direction_rad");
    m.downstream_efficiency = get("misalign.downstream_efficiency");
    m.channel_eta00 = get("misalign.channel_eta00");
    m.channel_eta10 = get("misalign.channel_eta10");
    m.validate();
    return m;
}

MechanicalMode ExperimentConfig::torsion_mode() const {
    MechanicalMode m{ModeShape::torsion(ribbon()), get("mech.frequency_hz"),
                     get("mech.quality_factor"), get("mech.moment_of_inertia_kgm2"),
                     get("mech.bath_temperature_k")};
    m.validate();
    return m;
}


GridSpec ExperimentConfig::make_grid(double extra_half_width) const {
    const double half = get("numerics.grid_window_waists") * get("beam.waist_m") + extra_half_width;
    const int nodes = static_cast<int>(get("numerics.grid_nodes"));
    return GridSpec::centered(half, half, nodes, nodes);
}

SimplexOptions ExperimentConfig::simplex_options() const {
    SimplexOptions s;
    s.relative_tolerance = get("numerics.fit_rel_tol");
    s.max_evaluations = static_cast<int>(get("numerics.fit_max_evals"));
    return s;
}

CalibrationOptions ExperimentConfig::calibration_options() const {
    CalibrationOptions c;
    c.wing_lo_gammas = get("numerics.wing_lo_gammas");
    c.wing_hi_gammas = get("numerics.wing_hi_gammas");
    c.floor_fraction = get("numerics.floor_fraction");
    c.bootstrap_resamples = static_cast<int>(get("numerics.bootstrap_resamples"));
    c.simplex = simplex_options();
    return c;
}

std::uint64_t ExperimentConfig::seed() const {
    return static_cast<std::uint64_t>(get("numerics.seed"));
}

}  // namespace spade
