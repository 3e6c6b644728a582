// spade — command-line front end. Talks to the shared library exclusively
// through the public C API in spade/spade.h.

#include <spade/spade.h>

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

namespace {

struct ConfigDeleter {
    void operator()(spade_config* c) const { spade_config_free(c); }
};
struct ReportDeleter {
    void operator()(spade_report* r) const { spade_report_free(r); }
};
struct TableDeleter {
    void operator()(spade_table* t) const { spade_table_free(t); }
};

using ConfigPtr = std::unique_ptr<spade_config, ConfigDeleter>;
using ReportPtr = std::unique_ptr<spade_report, ReportDeleter>;
using TablePtr = std::unique_ptr<spade_table, TableDeleter>;

[[noreturn]] void die(spade_status status) {
    std::cerr << "error: " << spade_status_name(status) << ": " << spade_last_error() << "\n";
    std::exit(status);
}

void check(spade_status status) {
    if (status != SPADE_OK) die(status);
}

struct CommonArgs {
    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    bool seed_given = false;
    bool plot = false;
    std::vector<std::string> overrides;  // key=value
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "configuration file (key = value)");
    cmd->add_option("--out", args.out_dir, "output directory")->capture_default_str();
    cmd->add_option("--seed", args.seed, "random seed override")
        ->each([&](const std::string&) { args.seed_given = true; });
    cmd->add_flag("--plot", args.plot, "emit an SVG plot next to each CSV");
    cmd->add_option("--set", args.overrides, "override a config key, e.g. --set beam.power_w=5e-3");
}

ConfigPtr load_config(const CommonArgs& args) {
    spade_config* raw = nullptr;
    if (args.config_path.empty())
        check(spade_config_new(&raw));
    else
        check(spade_config_load(args.config_path.c_str(), &raw));
    ConfigPtr cfg(raw);
    for (const auto& kv : args.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            std::cerr << "error: invalid-argument: --set expects key=value, got '" << kv << "'\n";
            std::exit(SPADE_ERR_INVALID_ARGUMENT);
        }
        check(spade_config_set(cfg.get(), kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str()));
    }
    if (args.seed_given) {
        const std::string s = std::to_string(args.seed);
        check(spade_config_set(cfg.get(), "numerics.seed", s.c_str()));
    }
    check(spade_config_validate(cfg.get()));
    return cfg;
}

std::uint64_t effective_seed(const ConfigPtr& cfg) {
    double v = 0.0;
    check(spade_config_get(cfg.get(), "numerics.seed", &v));
    return static_cast<std::uint64_t>(v);
}

std::string out_path(const CommonArgs& args, const std::string& name) {
    std::filesystem::create_directories(args.out_dir);
    return (std::filesystem::path(args.out_dir) / name).string();
}

void emit_report(const CommonArgs& args, const std::string& name, const spade_report* report) {
    std::cout << spade_report_text(report);
    std::ofstream out(out_path(args, name));
    out << spade_report_text(report);
}

void emit_table(const CommonArgs& args, const std::string& name, const spade_table* table,
                const std::string& title) {
    const std::string csv = out_path(args, name + ".csv");
    check(spade_table_write_csv(table, csv.c_str()));
    std::cout << "wrote " << csv << "\n";
    if (args.plot) {
        const std::string svg = out_path(args, name + ".svg");
        check(spade_table_write_svg(table, svg.c_str(), title.c_str()));
        std::cout << "wrote " << svg << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SPADE optomechanical readout simulator and calibration toolkit"};
    app.require_subcommand(1);

    // limits ---------------------------------------------------------------
    CommonArgs limits_args;
    CLI::App* limits = app.add_subcommand("limits", "quantum-limited readout numbers");
    add_common(limits, limits_args);

    // misalign ---------------------------------------------------------------
    CommonArgs mis_args;
    double xs_min = 0.0, xs_max = 300e-6;
    int mis_points = 31;
    CLI::App* misalign = app.add_subcommand("misalign", "receiver misalignment sweep");
    add_common(misalign, mis_args);
    misalign->add_option("--xs-min", xs_min, "sweep start, m")->capture_default_str();
    misalign->add_option("--xs-max", xs_max, "sweep end, m")->capture_default_str();
    misalign->add_option("--points", mis_points, "sweep points")->capture_default_str();

    // overlap ----------------------------------------------------------------
    CommonArgs ov_args;
    std::string ov_shape = "torsion";
    CLI::App* overlap = app.add_subcommand("overlap", "overlap couplings for a modeshape");
    add_common(overlap, ov_args);
    overlap->add_option("--shape", ov_shape, "torsion | flexural | modeshape file")
        ->capture_default_str();

    // scan -------------------------------------------------------------------
    CommonArgs scan_args;
    std::string scan_shape = "torsion";
    double y0_min = 0.0, y0_max = 0.0;
    int scan_points = 81;
    bool scan_area = false;
    CLI::App* scan = app.add_subcommand("scan", "coupling scan along the ribbon axis");
    add_common(scan, scan_args);
    scan->add_option("--shape", scan_shape, "torsion | flexural | modeshape file")
        ->capture_default_str();
    scan->add_option("--y0-min", y0_min, "scan start, m (default -L/2)");
    scan->add_option("--y0-max", y0_max, "scan end, m (default +L/2)");
    scan->add_option("--points", scan_points, "scan points")->capture_default_str();
    scan->add_flag("--area", scan_area, "emit toy-model peak areas instead of raw couplings");

    // synth ------------------------------------------------------------------
    CommonArgs synth_args;
    std::string synth_kind = "spectrum";
    CLI::App* synth = app.add_subcommand("synth", "synthesize spectra / records");
    add_common(synth, synth_args);
    synth->add_option("--kind", synth_kind, "spectrum | ringdown | shot | knife")
        ->capture_default_str();

    // calibrate ----------------------------------------------------------------
    CommonArgs cal_args;
    std::string cal_raw, cal_det, cal_shot, cal_coupling;
    CLI::App* calibrate = app.add_subcommand("calibrate", "thermal-wing calibration pipeline");
    add_common(calibrate, cal_args);
    calibrate->add_option("--raw", cal_raw, "raw spectrum CSV")->required();
    calibrate->add_option("--detector", cal_det, "detector (laser blocked) spectrum CSV")->required();
    calibrate->add_option("--shot", cal_shot, "optional power_w,psd_v2_per_hz series CSV");
    calibrate->add_option("--coupling", cal_coupling, "optional x_m,eta00,eta10 data CSV");

    // knife --------------------------------------------------------------------
    CommonArgs knife_args;
    std::string knife_csv;
    CLI::App* knife = app.add_subcommand("knife", "knife-edge waist fit");
    add_common(knife, knife_args);
    knife->add_option("--profile", knife_csv, "position_m,power_w profile CSV")->required();

    // ringdown -------------------------------------------------------------------
    CommonArgs ring_args;
    std::string ring_csv;
    CLI::App* ringdown = app.add_subcommand("ringdown", "ringdown quality-factor fit");
    add_common(ringdown, ring_args);
    ringdown->add_option("--record", ring_csv, "t_s,amplitude record CSV")->required();

    // cool -------------------------------------------------------------------
    CommonArgs cool_args;
    CLI::App* cool = app.add_subcommand("cool", "feedback-cooling occupation limits");
    add_common(cool, cool_args);

    CLI11_PARSE(app, argc, argv);

    if (limits->parsed()) {
        ConfigPtr cfg = load_config(limits_args);
        spade_report* rep = nullptr;
        check(spade_run_limits(cfg.get(), &rep));
        ReportPtr report(rep);
        emit_report(limits_args, "limits_report.txt", report.get());
        return 0;
    }

    if (misalign->parsed()) {
        ConfigPtr cfg = load_config(mis_args);
        spade_table* tab = nullptr;
        spade_report* rep = nullptr;
        check(spade_run_misalign(cfg.get(), xs_min, xs_max, mis_points, &tab, &rep));
        TablePtr table(tab);
        ReportPtr report(rep);
        emit_table(mis_args, "misalign_sweep", table.get(), "imprecision vs receiver shift");
        emit_report(mis_args, "misalign_report.txt", report.get());
        return 0;
    }

    if (overlap->parsed()) {
        ConfigPtr cfg = load_config(ov_args);
        spade_report* rep = nullptr;
        check(spade_run_overlap(cfg.get(), ov_shape.c_str(), &rep));
        ReportPtr report(rep);
        emit_report(ov_args, "overlap_report.txt", report.get());
        return 0;
    }

    if (scan->parsed()) {
        ConfigPtr cfg = load_config(scan_args);
        if (y0_min == 0.0 && y0_max == 0.0) {
            double length = 0.0;
            check(spade_config_get(cfg.get(), "ribbon.length_m", &length));
            y0_min = -length / 2.0;
            y0_max = length / 2.0;
        }
        spade_table* tab = nullptr;
        if (scan_area)
            check(spade_run_area_scan(cfg.get(), y0_min, y0_max, scan_points, &tab));
        else
            check(spade_run_scan(cfg.get(), scan_shape.c_str(), y0_min, y0_max, scan_points, &tab));
        TablePtr table(tab);
        emit_table(scan_args, scan_area ? "area_scan" : "coupling_scan", table.get(),
                   scan_area ? "toy-model peak areas" : "coupling scan");
        return 0;
    }

    if (synth->parsed()) {
        ConfigPtr cfg = load_config(synth_args);
        const std::uint64_t seed = effective_seed(cfg);
        if (synth_kind == "spectrum") {
            const std::string raw = out_path(synth_args, "raw_spectrum.csv");
            const std::string det = out_path(synth_args, "detector_spectrum.csv");
            check(spade_run_synth(cfg.get(), "spectrum", seed, raw.c_str(), det.c_str()));
            std::cout << "wrote " << raw << "\nwrote " << det << "\n";
        } else {
            const std::string name = synth_kind == "ringdown"  ? "ringdown.csv"
                                     : synth_kind == "shot"    ? "shot_series.csv"
                                                               : "knife_profile.csv";
            const std::string path = out_path(synth_args, name);
            check(spade_run_synth(cfg.get(), synth_kind.c_str(), seed, path.c_str(), nullptr));
            std::cout << "wrote " << path << "\n";
        }
        return 0;
    }

    if (calibrate->parsed()) {
        ConfigPtr cfg = load_config(cal_args);
        const std::string calibrated = out_path(cal_args, "calibrated_spectrum.csv");
        spade_report* rep = nullptr;
        check(spade_run_calibrate(cfg.get(), cal_raw.c_str(), cal_det.c_str(), calibrated.c_str(),
                                  &rep));
        ReportPtr report(rep);
        emit_report(cal_args, "calibration_report.txt", report.get());
        std::cout << "wrote " << calibrated << "\n";
        if (!cal_shot.empty()) {
            spade_report* shot_rep = nullptr;
            check(spade_run_shot_fit(cfg.get(), cal_shot.c_str(), &shot_rep));
            ReportPtr sr(shot_rep);
            emit_report(cal_args, "shot_scaling_report.txt", sr.get());
        }
        if (!cal_coupling.empty()) {
            spade_report* coup_rep = nullptr;
            check(spade_run_coupling_fit(cfg.get(), cal_coupling.c_str(), &coup_rep));
            ReportPtr cr(coup_rep);
            emit_report(cal_args, "coupling_fit_report.txt", cr.get());
        }
        return 0;
    }

    if (knife->parsed()) {
        ConfigPtr cfg = load_config(knife_args);
        spade_report* rep = nullptr;
        check(spade_run_knife(cfg.get(), knife_csv.c_str(), &rep));
        ReportPtr report(rep);
        emit_report(knife_args, "knife_report.txt", report.get());
        return 0;
    }

    if (ringdown->parsed()) {
        ConfigPtr cfg = load_config(ring_args);
        spade_report* rep = nullptr;
        check(spade_run_ringdown(cfg.get(), ring_csv.c_str(), &rep));
        ReportPtr report(rep);
        emit_report(ring_args, "ringdown_report.txt", report.get());
        return 0;
    }

    if (cool->parsed()) {
        ConfigPtr cfg = load_config(cool_args);
        spade_report* rep = nullptr;
        check(spade_run_cool(cfg.get(), &rep));
        ReportPtr report(rep);
        emit_report(cool_args, "cool_report.txt", report.get());
        return 0;
    }

    return 0;
}
