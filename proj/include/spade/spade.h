/*
 * spade — spatial-mode-demultiplexed readout simulator and calibration toolkit.
 *
 * C API of the shared library. All entry points return a spade_status; output
 * objects are opaque handles released with the matching *_free call. Detailed
 * error text for the most recent failure on the calling thread is available
 * from spade_last_error().
 */
#ifndef SPADE_SPADE_H
#define SPADE_SPADE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum spade_status {
    SPADE_OK = 0,
    SPADE_ERR_INVALID_ARGUMENT = 1, /* contract violation, bad config value */
    SPADE_ERR_PARSE = 2,            /* malformed input file */
    SPADE_ERR_FIT = 3,              /* fit non-convergence or model misfit */
    SPADE_ERR_IO = 4,               /* file not readable/writable */
    SPADE_ERR_INTERNAL = 5
} spade_status;

const char* spade_status_name(spade_status status);
const char* spade_last_error(void);
const char* spade_version(void);

/* ------------------------------------------------------------------ */
/* configuration                                                       */
/* ------------------------------------------------------------------ */

typedef struct spade_config spade_config;

/* Documented defaults (the experiment's nominal parameters). */
spade_status spade_config_new(spade_config** out);
/* Defaults overridden by a flat "key = value" file. */
spade_status spade_config_load(const char* path, spade_config** out);
spade_status spade_config_set(spade_config* cfg, const char* key, const char* value);
spade_status spade_config_get(const spade_config* cfg, const char* key, double* out);
spade_status spade_config_validate(const spade_config* cfg);
void spade_config_free(spade_config* cfg);

/* ------------------------------------------------------------------ */
/* reports and tables                                                  */
/* ------------------------------------------------------------------ */

typedef struct spade_report spade_report;

/* Full "key = value" text; owned by the report handle. */
const char* spade_report_text(const spade_report* report);
spade_status spade_report_value(const spade_report* report, const char* key, double* out);
void spade_report_free(spade_report* report);

typedef struct spade_table spade_table;

size_t spade_table_rows(const spade_table* table);
size_t spade_table_cols(const spade_table* table);
const char* spade_table_col_name(const spade_table* table, size_t col);
spade_status spade_table_value(const spade_table* table, size_t row, size_t col, double* out);
spade_status spade_table_write_csv(const spade_table* table, const char* path);
/* Presentation-only SVG line plot of the table (first column on x). */
spade_status spade_table_write_svg(const spade_table* table, const char* path, const char* title);
void spade_table_free(spade_table* table);

/* ------------------------------------------------------------------ */
/* pipelines (one per CLI verb)                                        */
/* ------------------------------------------------------------------ */

/* Quantum-limited numbers: diffraction angle, photon flux, imprecision,
 * backaction, zero-point spectrum (both conventions), phonon budget. */
spade_status spade_run_limits(const spade_config* cfg, spade_report** report);

/* Overlap couplings for a modeshape: "torsion", "flexural" or a gridded
 * modeshape file path. */
spade_status spade_run_overlap(const spade_config* cfg, const char* shape_source,
                               spade_report** report);

/* Coupling scan along the ribbon axis: y0_m,beta10,beta01,dphidx,dphidy. */
spade_status spade_run_scan(const spade_config* cfg, const char* shape_source, double y0_min,
                            double y0_max, int n_points, spade_table** table);

/* Toy-model peak areas combining the torsion and flexural scans under the
 * configured receiver rotation. */
spade_status spade_run_area_scan(const spade_config* cfg, double y0_min, double y0_max,
                                 int n_points, spade_table** table);

/* Misalignment sweep:
 * x_s_m,eta_closed,eta_numeric,S_imp_rad2_per_Hz,S_imp00_rad2_per_Hz. */
spade_status spade_run_misalign(const spade_config* cfg, double xs_min, double xs_max,
                                int n_points, spade_table** table, spade_report** report);

/* Synthetic data. kind: "spectrum" (writes raw + detector CSVs), "ringdown",
 * "shot" or "knife" (one CSV each; second path ignored, may be NULL). */
spade_status spade_run_synth(const spade_config* cfg, const char* kind, uint64_t seed,
                             const char* out_csv, const char* out_second_csv);

/* Thermal-wing calibration of a measured/synthesized spectrum pair. Emits the
 * calibrated spectrum (freq_hz,psd_rad2_per_hz) when out_calibrated_csv is
 * non-NULL. */
spade_status spade_run_calibrate(const spade_config* cfg, const char* raw_csv,
                                 const char* detector_csv, const char* out_calibrated_csv,
                                 spade_report** report);

/* Shot-noise scaling regression on a power_w,psd_v2_per_hz series. */
spade_status spade_run_shot_fit(const spade_config* cfg, const char* series_csv,
                                spade_report** report);

/* Knife-edge waist fit on a position_m,power_w profile. */
spade_status spade_run_knife(const spade_config* cfg, const char* profile_csv,
                             spade_report** report);

/* Ringdown quality-factor fit on a t_s,amplitude record. */
spade_status spade_run_ringdown(const spade_config* cfg, const char* record_csv,
                                spade_report** report);

/* Joint channel-coupling fit on x_m,eta00,eta10 data. */
spade_status spade_run_coupling_fit(const spade_config* cfg, const char* data_csv,
                                    spade_report** report);

/* Feedback-cooling occupation limits for the configured phonon budget. */
spade_status spade_run_cool(const spade_config* cfg, spade_report** report);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SPADE_SPADE_H */
