#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "config.hpp"
#include "csv.hpp"

namespace spade {

// Command-level pipelines shared by the C API and tests. Each one corresponds
// to a CLI verb and produces the report/CSV payloads that verb emits.

Report run_limits(const ExperimentConfig& cfg);

// shape_source: "torsion", "flexural", or a gridded-modeshape file path.
Report run_overlap(const ExperimentConfig& cfg, const std::string& shape_source);

Table run_scan(const ExperimentConfig& cfg, const std::string& shape_source,
               double y0_min, double y0_max, int n_points);

Table run_area_scan(const ExperimentConfig& cfg, double y0_min, double y0_max, int n_points);

struct MisalignSweep {
    Table table;
    Report report;
};

MisalignSweep run_misalign(const ExperimentConfig& cfg, double xs_min, double xs_max, int n_points);

struct SynthSpectra {
    SpectrumRecord raw;
    SpectrumRecord detector;
};

SynthSpectra run_synth_spectrum(const ExperimentConfig& cfg, std::uint64_t seed);
RingdownRecord run_synth_ringdown(const ExperimentConfig& cfg, std::uint64_t seed);
Table run_synth_shot(const ExperimentConfig& cfg, std::uint64_t seed);
Table run_synth_knife(const ExperimentConfig& cfg, std::uint64_t seed);

struct CalibrateOutput {
    Report report;
    SpectrumRecord calibrated;
};

CalibrateOutput run_calibrate(const ExperimentConfig& cfg, const SpectrumRecord& raw,
                              const SpectrumRecord& detector);

Report run_knife_fit(const ExperimentConfig& cfg, const std::vector<KnifeEdgePoint>& profile);
Report run_ringdown_fit(const ExperimentConfig& cfg, const RingdownRecord& record);
Report run_shot_fit(const ExperimentConfig& cfg, const std::vector<ShotScalingPoint>& series);
Report run_coupling_fit(const ExperimentConfig& cfg, const std::vector<CouplingDataPoint>& data);

Report run_cool(const ExperimentConfig& cfg);

ModeShape shape_from_source(const ExperimentConfig& cfg, const std::string& shape_source);

}  // namespace spade
