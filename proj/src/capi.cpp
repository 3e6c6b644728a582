#include "spade/spade.h"

#include <fstream>
#include <string>

#include "config.hpp"
#include "csv.hpp"
#include "errors.hpp"
#include "pipelines.hpp"
#include "svg_plot.hpp"

// Opaque handle definitions. Each wraps the corresponding C++ object; the C
// boundary converts exceptions into status codes and a thread-local message.

struct spade_config {
    spade::ExperimentConfig cfg;
};

struct spade_report {
    spade::Report rep;
    std::string text;
};

struct spade_table {
    spade::Table table;
};

namespace {

thread_local std::string g_last_error;

spade_status fail(spade_status code, const std::string& message) {
    g_last_error = message;
    return code;
}

template <typename Fn>
spade_status guarded(Fn&& fn) {
    try {
        fn();
        return SPADE_OK;
    } catch (const spade::ParseError& e) {
        return fail(SPADE_ERR_PARSE, e.what());
    } catch (const spade::ValidationError& e) {
        return fail(SPADE_ERR_INVALID_ARGUMENT, e.what());
    } catch (const spade::FitError& e) {
        return fail(SPADE_ERR_FIT, e.what());
    } catch (const spade::IoError& e) {
        return fail(SPADE_ERR_IO, e.what());
    } catch (const std::exception& e) {
        return fail(SPADE_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(SPADE_ERR_INTERNAL, "unknown error");
    }
}

spade_status require(bool ok, const char* what) {
    return ok ? SPADE_OK : fail(SPADE_ERR_INVALID_ARGUMENT, what);
}

spade_report* make_report(spade::Report rep) {
    auto* out = new spade_report{std::move(rep), {}};
    out->text = out->rep.text();
    return out;
}

void write_csv_file(const spade::Table& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw spade::IoError("cannot write CSV file: " + path);
    table.write_csv(out);
}

}  // namespace

extern "C" {

const char* spade_status_name(spade_status status) {
    switch (status) {
        case SPADE_OK: return "ok";
        case SPADE_ERR_INVALID_ARGUMENT: return "invalid-argument";
        case SPADE_ERR_PARSE: return "parse-error";
        case SPADE_ERR_FIT: return "fit-error";
        case SPADE_ERR_IO: return "io-error";
        case SPADE_ERR_INTERNAL: return "internal-error";
    }
    return "unknown";
}

const char* spade_last_error(void) { return g_last_error.c_str(); }

const char* spade_version(void) { return "1.0.0"; }

spade_status spade_config_new(spade_config** out) {
    if (spade_status s = require(out != nullptr, "spade_config_new: null output")) return s;
    return guarded([&] { *out = new spade_config{spade::ExperimentConfig::defaults()}; });
}

spade_status spade_config_load(const char* path, spade_config** out) {
    if (spade_status s = require(path && out, "spade_config_load: null argument")) return s;
    return guarded([&] { *out = new spade_config{spade::ExperimentConfig::load_file(path)}; });
}

spade_status spade_config_set(spade_config* cfg, const char* key, const char* value) {
    if (spade_status s = require(cfg && key && value, "spade_config_set: null argument")) return s;
    return guarded([&] { cfg->cfg.set_text(key, value); });
}

spade_status spade_config_get(const spade_config* cfg, const char* key, double* out) {
    if (spade_status s = require(cfg && key && out, "spade_config_get: null argument")) return s;
    return guarded([&] { *out = cfg->cfg.get(key); });
}

spade_status spade_config_validate(const spade_config* cfg) {
    if (spade_status s = require(cfg != nullptr, "spade_config_validate: null config")) return s;
    return guarded([&] { cfg->cfg.validate(); });
}

void spade_config_free(spade_config* cfg) { delete cfg; }

const char* spade_report_text(const spade_report* report) {
    return report ? report->text.c_str() : "";
}

spade_status spade_report_value(const spade_report* report, const char* key, double* out) {
    if (spade_status s = require(report && key && out, "spade_report_value: null argument")) return s;
    return guarded([&] { *out = report->rep.value(key); });
}

void spade_report_free(spade_report* report) { delete report; }

size_t spade_table_rows(const spade_table* table) { return table ? table->table.rows() : 0; }

size_t spade_table_cols(const spade_table* table) {
    return table ? table->table.columns().size() : 0;
}

const char* spade_table_col_name(const spade_table* table, size_t col) {
    if (!table || col >= table->table.columns().size()) return "";
    return table->table.columns()[col].c_str();
}

spade_status spade_table_value(const spade_table* table, size_t row, size_t col, double* out) {
    if (spade_status s = require(table && out, "spade_table_value: null argument")) return s;
    return guarded([&] { *out = table->table.at(row, col); });
}

spade_status spade_table_write_csv(const spade_table* table, const char* path) {
    if (spade_status s = require(table && path, "spade_table_write_csv: null argument")) return s;
    return guarded([&] { write_csv_file(table->table, path); });
}

spade_status spade_table_write_svg(const spade_table* table, const char* path, const char* title) {
    if (spade_status s = require(table && path, "spade_table_write_svg: null argument")) return s;
    return guarded([&] { spade::write_svg_file(path, table->table, title ? title : ""); });
}

void spade_table_free(spade_table* table) { delete table; }

spade_status spade_run_limits(const spade_config* cfg, spade_report** report) {
    if (spade_status s = require(cfg && report, "spade_run_limits: null argument")) return s;
    return guarded([&] { *report = make_report(spade::run_limits(cfg->cfg)); });
}

spade_status spade_run_overlap(const spade_config* cfg, const char* shape_source,
                               spade_report** report) {
    if (spade_status s = require(cfg && report, "spade_run_overlap: null argument")) return s;
    return guarded([&] {
        *report = make_report(spade::run_overlap(cfg->cfg, shape_source ? shape_source : ""));
    });
}

spade_status spade_run_scan(const spade_config* cfg, const char* shape_source, double y0_min,
                            double y0_max, int n_points, spade_table** table) {
    if (spade_status s = require(cfg && table, "spade_run_scan: null argument")) return s;
    return guarded([&] {
        *table = new spade_table{
            spade::run_scan(cfg->cfg, shape_source ? shape_source : "", y0_min, y0_max, n_points)};
    });
}

spade_status spade_run_area_scan(const spade_config* cfg, double y0_min, double y0_max,
                                 int n_points, spade_table** table) {
    if (spade_status s = require(cfg && table, "spade_run_area_scan: null argument")) return s;
    return guarded([&] {
        *table = new spade_table{spade::run_area_scan(cfg->cfg, y0_min, y0_max, n_points)};
    });
}

spade_status spade_run_misalign(const spade_config* cfg, double xs_min, double xs_max,
                                int n_points, spade_table** table, spade_report** report) {
    if (spade_status s = require(cfg && table && report, "spade_run_misalign: null argument"))
        return s;
    return guarded([&] {
        spade::MisalignSweep sweep = spade::run_misalign(cfg->cfg, xs_min, xs_max, n_points);
        *table = new spade_table{std::move(sweep.table)};
        *report = make_report(std::move(sweep.report));
    });
}

spade_status spade_run_synth(const spade_config* cfg, const char* kind, uint64_t seed,
                             const char* out_csv, const char* out_second_csv) {
    if (spade_status s = require(cfg && kind && out_csv, "spade_run_synth: null argument")) return s;
    return guarded([&] {
        const std::string what(kind);
        if (what == "spectrum") {
            if (!out_second_csv)
                throw spade::ValidationError(
                    "spade_run_synth: kind 'spectrum' needs a second path for the detector record");
            spade::SynthSpectra spectra = spade::run_synth_spectrum(cfg->cfg, seed);
            std::ofstream raw(out_csv);
            if (!raw) throw spade::IoError(std::string("cannot write: ") + out_csv);
            spade::write_spectrum(raw, spectra.raw);
            std::ofstream det(out_second_csv);
            if (!det) throw spade::IoError(std::string("cannot write: ") + out_second_csv);
            spade::write_spectrum(det, spectra.detector);
        } else if (what == "ringdown") {
            spade::RingdownRecord rec = spade::run_synth_ringdown(cfg->cfg, seed);
            std::ofstream out(out_csv);
            if (!out) throw spade::IoError(std::string("cannot write: ") + out_csv);
            spade::write_ringdown(out, rec);
        } else if (what == "shot") {
            write_csv_file(spade::run_synth_shot(cfg->cfg, seed), out_csv);
        } else if (what == "knife") {
            write_csv_file(spade::run_synth_knife(cfg->cfg, seed), out_csv);
        } else {
            throw spade::ValidationError("spade_run_synth: unknown kind '" + what + "'");
        }
    });
}

spade_status spade_run_calibrate(const spade_config* cfg, const char* raw_csv,
                                 const char* detector_csv, const char* out_calibrated_csv,
                                 spade_report** report) {
    if (spade_status s =
            require(cfg && raw_csv && detector_csv && report, "spade_run_calibrate: null argument"))
        return s;
    return guarded([&] {
        spade::SpectrumRecord raw = spade::read_spectrum_file(raw_csv);
        spade::SpectrumRecord det = spade::read_spectrum_file(detector_csv);
        spade::CalibrateOutput out = spade::run_calibrate(cfg->cfg, raw, det);
        if (out_calibrated_csv) {
            std::ofstream f(out_calibrated_csv);
            if (!f) throw spade::IoError(std::string("cannot write: ") + out_calibrated_csv);
            f << "# units=" << spade::units_tag(out.calibrated.units)
              << " n_avg=" << out.calibrated.n_avg << '\n';
            f << "freq_hz,psd_rad2_per_hz\n";
            for (std::size_t i = 0; i < out.calibrated.frequency.size(); ++i)
                f << spade::format_double(out.calibrated.frequency[i]) << ','
                  << spade::format_double(out.calibrated.psd[i]) << '\n';
        }
        *report = make_report(std::move(out.report));
    });
}

spade_status spade_run_shot_fit(const spade_config* cfg, const char* series_csv,
                                spade_report** report) {
    if (spade_status s = require(cfg && series_csv && report, "spade_run_shot_fit: null argument"))
        return s;
    return guarded([&] {
        *report = make_report(spade::run_shot_fit(cfg->cfg, spade::read_shot_series_file(series_csv)));
    });
}

spade_status spade_run_knife(const spade_config* cfg, const char* profile_csv,
                             spade_report** report) {
    if (spade_status s = require(cfg && profile_csv && report, "spade_run_knife: null argument"))
        return s;
    return guarded([&] {
        *report =
            make_report(spade::run_knife_fit(cfg->cfg, spade::read_knife_profile_file(profile_csv)));
    });
}

spade_status spade_run_ringdown(const spade_config* cfg, const char* record_csv,
                                spade_report** report) {
    if (spade_status s = require(cfg && record_csv && report, "spade_run_ringdown: null argument"))
        return s;
    return guarded([&] {
        *report =
            make_report(spade::run_ringdown_fit(cfg->cfg, spade::read_ringdown_file(record_csv)));
    });
}

spade_status spade_run_coupling_fit(const spade_config* cfg, const char* data_csv,
                                    spade_report** report) {
    if (spade_status s =
            require(cfg && data_csv && report, "spade_run_coupling_fit: null argument"))
        return s;
    return guarded([&] {
        *report =
            make_report(spade::run_coupling_fit(cfg->cfg, spade::read_coupling_data_file(data_csv)));
    });
}

spade_status spade_run_cool(const spade_config* cfg, spade_report** report) {
    if (spade_status s = require(cfg && report, "spade_run_cool: null argument")) return s;
    return guarded([&] { *report = make_report(spade::run_cool(cfg->cfg)); });
}

}  // extern "C"
