#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "calibration.hpp"
#include "mech_modes.hpp"
#include "misalign.hpp"
#include "quantum_limits.hpp"

namespace spade {

// Flat key = value configuration with dotted section prefixes. Unknown keys
// are rejected; unspecified keys keep their documented defaults (the
// experiment's nominal parameters).
class ExperimentConfig {
public:
    ExperimentConfig();

    static ExperimentConfig defaults() { return ExperimentConfig{}; }
    static ExperimentConfig load_file(const std::string& path);
    void apply_stream(std::istream& in, const std::string& origin);

    void set(const std::string& key, double value);           // throws on unknown key
    void set_text(const std::string& key, const std::string& value);
    double get(const std::string& key) const;                 // throws on unknown key
    const std::map<std::string, double>& entries() const { return values_; }

    // Range checks for every field; error messages name the offending key.
    void validate() const;

    BeamParams beam() const;
    RibbonGeometry ribbon() const;
    MisalignConfig misalign() const;
    MechanicalMode torsion_mode() const;

    // Quadrature grid: +-(window_waists * w0 + extra) per axis.
    GridSpec make_grid(double extra_half_width = 0.0) const;

    SimplexOptions simplex_options() const;
    CalibrationOptions calibration_options() const;

    std::uint64_t seed() const;
    double probe_phase() const { return get("numerics.probe_phase"); }

private:
    std::map<std::string, double> values_;
};

}  // namespace spade
