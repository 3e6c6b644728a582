#include "pipelines.hpp"

#include <cmath>

#include "constants.hpp"
#include "errors.hpp"

namespace spade {

namespace {

OpticalMode fundamental(const ExperimentConfig& cfg) {
    return {0, 0, cfg.get("beam.waist_m"), 0.0, 0.0, 0.0};
}

void add_flags(Report& rep, const FitReport& fit) {
    rep.add("fit_residual_norm", fit.residual_norm);
    rep.add("fit_iterations", fit.iterations);
    rep.add_text("fit_converged", fit.converged ? "yes" : "no");
    std::string flags;
    for (const auto& f : fit.flags) {
        if (!flags.empty()) flags += ";";
        flags += f;
    }
    rep.add_text("flags", flags.empty() ? "none" : flags);
}

}  // namespace

ModeShape shape_from_source(const ExperimentConfig& cfg, const std::string& shape_source) {
    if (shape_source.empty() || shape_source == "torsion") return ModeShape::torsion(cfg.ribbon());
    if (shape_source == "flexural") return ModeShape::flexural(cfg.ribbon());
    return load_grid_shape_file(shape_source);
}

Report run_limits(const ExperimentConfig& cfg) {
    cfg.validate();
    const BeamParams beam = cfg.beam();
    const MechanicalMode mode = cfg.torsion_mode();
    const double n_flux = beam.photon_flux();
    const double k = beam.wavenumber();
    const double theta_d = beam.diffraction_angle();

    Report rep;
    rep.add("theta_d_rad", theta_d);
    rep.add("photon_flux_per_s", n_flux);
    rep.add("wavenumber_rad_per_m", k);
    rep.add("imprecision_angle_rad2_per_hz", imprecision_angle(beam));

    // large-ribbon torsion anchor beta_perp = w0/w_r
    const double beta_perp = beam.waist / cfg.get("ribbon.width_m");
    rep.add("beta_perp_analytic", beta_perp);
    rep.add("imprecision_displacement_m2_per_hz",
            imprecision_displacement(n_flux, k, beta_perp));
    rep.add("backaction_force_n2_per_hz", backaction_force(n_flux, k, beta_perp * beta_perp));
    rep.add("backaction_torque_nm2_per_hz", backaction_torque(beam));

    const ZeroPointPsd zp = zero_point_psd(mode);
    rep.add("zero_point_as_written_rad2_per_hz", zp.as_written);
    rep.add("zero_point_resonant_rad2_per_hz", zp.resonant);
    rep.add_text("note.zero_point", zp.note);

    const PhononBudget budget = phonon_budget(cfg.get("measurement.imprecision_rad2_per_hz"),
                                              cfg.get("measurement.zero_point_rad2_per_hz"),
                                              cfg.get("measurement.eta"), mode);
    rep.add("n_imp", budget.n_imp);
    rep.add("n_ba", budget.n_ba);
    rep.add("n_th", budget.n_th);
    return rep;
}

Report run_overlap(const ExperimentConfig& cfg, const std::string& shape_source) {
    cfg.validate();
    const ModeShape shape = shape_from_source(cfg, shape_source);
    OpticalMode u_in = fundamental(cfg);
    OpticalMode u_perp = u_in;
    u_perp.m = 1;

    const CouplingResult r = couplings(u_in, u_perp, shape, cfg.make_grid());
    Report rep;
    rep.add("beta_parallel", r.beta_parallel);
    rep.add("beta_perp", r.beta_perp);
    rep.add("beta_sq", r.beta_sq);
    rep.add("convergence_estimate", r.convergence);
    rep.add_text("truncation_warning", r.truncation_warning ? "yes" : "no");
    if (shape.kind() == ModeShape::Kind::torsion_fundamental)
        rep.add("beta_perp_analytic_limit", u_in.waist / shape.geometry().width);
    if (shape.coarse_grid_warning()) rep.add_text("coarse_grid_warning", "yes");
    return rep;
}

Table run_scan(const ExperimentConfig& cfg, const std::string& shape_source,
               double y0_min, double y0_max, int n_points) {
    cfg.validate();
    const ModeShape shape = shape_from_source(cfg, shape_source);
    const CouplingScan scan =
        coupling_scan(fundamental(cfg), shape, y0_min, y0_max, n_points, cfg.make_grid());

    Table t({"y0_m", "beta10", "beta01", "dphidx", "dphidy"});
    for (const auto& row : scan.rows)
        t.append_row({row.y0, row.beta10, row.beta01, row.dphidx, row.dphidy});
    return t;
}

Table run_area_scan(const ExperimentConfig& cfg, double y0_min, double y0_max, int n_points) {
    cfg.validate();
    const GridSpec grid = cfg.make_grid();
    const OpticalMode u_in = fundamental(cfg);
    const CouplingScan torsion =
        coupling_scan(u_in, ModeShape::torsion(cfg.ribbon()), y0_min, y0_max, n_points, grid);
    const CouplingScan flexural =
        coupling_scan(u_in, ModeShape::flexural(cfg.ribbon()), y0_min, y0_max, n_points, grid);

    const auto rows = area_scan_model(cfg.get("misalign.mode_rotation_rad"), torsion, flexural);
    Table t({"y0_m", "torsion_area_rel", "flexural_area_rel"});
    for (const auto& row : rows) t.append_row({row.y0, row.torsion, row.flexural});
    return t;
}

MisalignSweep run_misalign(const ExperimentConfig& cfg, double xs_min, double xs_max, int n_points) {
    cfg.validate();
    if (n_points < 1 || !(xs_max >= xs_min) || xs_min < 0.0)
        throw ValidationError("misalign sweep: need xs_max >= xs_min >= 0 and n >= 1");

    const BeamParams beam = cfg.beam();
    const MisalignConfig base = cfg.misalign();
    const ModeShape shape = ModeShape::torsion(cfg.ribbon());
    const double w0 = beam.waist;
    // widen the window so shifted detection modes stay on-grid
    const double extra = xs_max * w0 / base.receiver_waist;
    const GridSpec grid = cfg.make_grid(extra);

    Table t({"x_s_m", "eta_closed", "eta_numeric", "S_imp_rad2_per_Hz", "S_imp00_rad2_per_Hz"});
    double worst_gap = 0.0;
    for (int i = 0; i < n_points; ++i) {
        MisalignConfig m = base;
        m.shift = n_points == 1 ? xs_min : xs_min + (xs_max - xs_min) * i / (n_points - 1);
        const EfficiencyResult closed = efficiency_closed_form(m, beam);
        const EfficiencyResult numeric =
            efficiency_numeric(m, beam, shape, grid, cfg.probe_phase());
        const Hg00Imprecision hg00 =
            hg00_imprecision(m, beam, shape, cfg.get("ribbon.width_m"), grid, cfg.probe_phase());
        t.append_row({m.shift, closed.eta, numeric.eta, closed.imprecision, hg00.value});
        if (closed.eta > 0.0)
            worst_gap = std::max(worst_gap, std::abs(closed.eta - numeric.eta) / closed.eta);
    }

    Report rep;
    rep.add("imprecision_angle_ql_rad2_per_hz", imprecision_angle(beam));
    rep.add("closed_vs_numeric_max_rel_gap", worst_gap);
    return {std::move(t), std::move(rep)};
}

namespace {

NoiseModel synth_noise_model(const ExperimentConfig& cfg, bool detector_only) {
    NoiseModel model;
    model.gain = cfg.get("synth.gain_v2_per_rad2");
    model.detector_floor = cfg.get("synth.detector_floor_v2_per_hz");
    if (!detector_only) {
        model.modes.push_back({cfg.torsion_mode(), 1.0});
        model.imprecision_floor = cfg.get("synth.imprecision_rad2_per_hz");
    }
    return model;
}

std::vector<double> synth_grid(const ExperimentConfig& cfg) {
    const MechanicalMode mode = cfg.torsion_mode();
    const double gamma_f = mode.linewidth() / (2.0 * constants::pi);
    const double half_span = 0.5 * cfg.get("synth.span_gammas") * gamma_f;
    const double step = cfg.get("synth.rbw_gammas") * gamma_f;
    std::vector<double> grid;
    const auto n = static_cast<std::size_t>(2.0 * half_span / step) + 1;
    grid.reserve(n);
    for (std::size_t i = 0; i < n; ++i) grid.push_back(mode.frequency - half_span + i * step);
    return grid;
}

}  // namespace

SynthSpectra run_synth_spectrum(const ExperimentConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    const std::vector<double> grid = synth_grid(cfg);
    const int n_avg = static_cast<int>(cfg.get("synth.n_avg"));
    SynthSpectra out{
        synth_periodogram(synth_noise_model(cfg, false), grid, n_avg, seed),
        synth_periodogram(synth_noise_model(cfg, true), grid, n_avg, seed + 1),
    };
    return out;
}

RingdownRecord run_synth_ringdown(const ExperimentConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    return synth_ringdown(cfg.torsion_mode(), cfg.get("synth.ringdown_duration_s"),
                          cfg.get("synth.ringdown_dt_s"), cfg.get("synth.ringdown_amplitude"),
                          cfg.get("synth.ringdown_floor"), seed);
}

Table run_synth_shot(const ExperimentConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    const int n = static_cast<int>(cfg.get("synth.shot_points"));
    const double pmin = cfg.get("synth.shot_pmin_w");
    const double pmax = cfg.get("synth.shot_pmax_w");
    if (!(pmax > pmin)) throw ValidationError("config: synth.shot_pmax_w must exceed shot_pmin_w");
    std::vector<double> powers;
    for (int i = 0; i < n; ++i) powers.push_back(pmin + (pmax - pmin) * i / (n - 1));
    const auto series =
        shot_scaling_series(powers, cfg.get("synth.shot_slope_v2_per_hz_per_w"),
                            cfg.get("synth.shot_intercept_v2_per_hz"),
                            cfg.get("synth.shot_noise"), seed);
    Table t({"power_w", "psd_v2_per_hz"});
    for (const auto& pt : series) t.append_row({pt.power, pt.psd});
    return t;
}

Table run_synth_knife(const ExperimentConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    const int n = static_cast<int>(cfg.get("synth.knife_points"));
    const double half = cfg.get("synth.knife_halfspan_m");
    std::vector<double> positions;
    for (int i = 0; i < n; ++i) positions.push_back(-half + 2.0 * half * i / (n - 1));
    const auto profile = synth_knife_profile(
        positions, cfg.get("synth.knife_power_w"), 0.0, cfg.get("beam.waist_m"),
        cfg.get("synth.knife_baseline_w"), cfg.get("synth.knife_noise"), seed);
    Table t({"position_m", "power_w"});
    for (const auto& pt : profile) t.append_row({pt.position, pt.power});
    return t;
}

CalibrateOutput run_calibrate(const ExperimentConfig& cfg, const SpectrumRecord& raw,
                              const SpectrumRecord& detector) {
    cfg.validate();
    const CalibrationResult cal =
        calibrate_spectrum(raw, detector, cfg.torsion_mode(), cfg.beam(),
                           cfg.calibration_options());

    Report rep;
    rep.add("gain_v2_per_rad2", cal.gain);
    rep.add("gain_uncertainty", cal.gain_uncertainty);
    rep.add("center_frequency_hz", cal.center_frequency);
    rep.add("center_frequency_uncertainty_hz", cal.center_frequency_uncertainty);
    rep.add("linewidth_hz", cal.linewidth_hz);
    rep.add("linewidth_uncertainty_hz", cal.linewidth_uncertainty);
    rep.add("thermal_peak_rad2_per_hz", cal.thermal_peak);
    rep.add("floor_rad2_per_hz", cal.floor);
    rep.add("detector_mean_v2_per_hz", cal.detector_mean);
    rep.add("imprecision_rad2_per_hz", cal.imprecision);
    rep.add("imprecision_uncertainty_rad2_per_hz", cal.imprecision_uncertainty);
    rep.add("eta", cal.eta);
    rep.add("eta_uncertainty", cal.eta_uncertainty);
    add_flags(rep, cal.fit);
    rep.add_text("note.thermal_peak",
                 "peak pinned to 4 k_B T0 Q/(I omega^3); the omega^-1 variant seen in print "
                 "is dimensionally inconsistent and not used");
    return {std::move(rep), calibrated_spectrum(raw, cal)};
}

Report run_knife_fit(const ExperimentConfig& cfg, const std::vector<KnifeEdgePoint>& profile) {
    cfg.validate();
    KnifeEdgeOptions opts;
    opts.simplex = cfg.simplex_options();
    opts.bootstrap_resamples = std::min(static_cast<int>(cfg.get("numerics.bootstrap_resamples")), 100);
    const FitReport fit = fit_knife_edge(profile, opts);

    Report rep;
    rep.add("waist_m", fit.value("waist_m"));
    rep.add("waist_uncertainty_m", fit.uncertainty("waist_m"));
    rep.add("edge_m", fit.value("edge_m"));
    rep.add("amplitude_w", fit.value("amplitude_w"));
    rep.add("baseline_w", fit.value("baseline_w"));
    rep.add("scan_sign", fit.value("sign"));
    add_flags(rep, fit);
    return rep;
}

Report run_ringdown_fit(const ExperimentConfig& cfg, const RingdownRecord& record) {
    cfg.validate();
    RingdownOptions opts;
    opts.simplex = cfg.simplex_options();
    opts.bootstrap_resamples = std::min(static_cast<int>(cfg.get("numerics.bootstrap_resamples")), 100);
    const FitReport fit = fit_ringdown(record, cfg.get("mech.frequency_hz"), opts);

    Report rep;
    rep.add("quality_factor", fit.value("quality_factor"));
    rep.add("quality_factor_uncertainty", fit.uncertainty("quality_factor"));
    rep.add("tau_s", fit.value("tau_s"));
    rep.add("amplitude", fit.value("amplitude"));
    rep.add("floor", fit.value("floor"));
    add_flags(rep, fit);
    return rep;
}

Report run_shot_fit(const ExperimentConfig& cfg, const std::vector<ShotScalingPoint>& series) {
    cfg.validate();
    const FitReport fit = fit_shot_scaling(series);
    Report rep;
    rep.add("slope_v2_per_hz_per_w", fit.value("slope_v2_per_hz_per_w"));
    rep.add("intercept_v2_per_hz", fit.value("intercept_v2_per_hz"));
    rep.add_text("shot_consistent", fit.has_flag("shot-consistent") ? "yes" : "no");
    add_flags(rep, fit);
    return rep;
}

Report run_coupling_fit(const ExperimentConfig& cfg, const std::vector<CouplingDataPoint>& data) {
    cfg.validate();
    CouplingFitOptions opts;
    opts.phi_x = cfg.get("misalign.shift_direction_rad");
    opts.simplex = cfg.simplex_options();
    const FitReport fit = fit_coupling_model(data, opts);

    Report rep;
    rep.add("waist_m", fit.value("waist_m"));
    rep.add("phi_x_rad", fit.value("phi_x_rad"));
    rep.add("eta00_0", fit.value("eta00_0"));
    rep.add("eta10_0", fit.value("eta10_0"));
    add_flags(rep, fit);
    return rep;
}

Report run_cool(const ExperimentConfig& cfg) {
    cfg.validate();
    const double eta = cfg.get("measurement.eta");
    const PhononBudget budget = phonon_budget(cfg.get("measurement.imprecision_rad2_per_hz"),
                                              cfg.get("measurement.zero_point_rad2_per_hz"), eta,
                                              cfg.torsion_mode());
    const CoolingLimit limit = cooling_limit(budget, eta);

    Report rep;
    rep.add("n_imp", budget.n_imp);
    rep.add("n_ba", budget.n_ba);
    rep.add("n_th", budget.n_th);
    rep.add("n_m", limit.n_m);
    rep.add("n_m_eta_bound", limit.eta_bound);
    return rep;
}

}  // namespace spade
