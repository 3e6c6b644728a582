#include "misalign.hpp"

#include <cmath>
#include <limits>

#include "constants.hpp"
#include "errors.hpp"

namespace spade {

namespace {

constexpr double kSingularEta = 1e-15;

// phi * u_in sampled on the grid, plus the scattered-mode norm
// beta_gs^2 = <phi u|phi u> - <u|phi u>^2 on the same quadrature, so that
// ratios against slopes computed on this grid cancel the shared error.
struct ScatteredDecomposition {
    ComplexField phi_uin;
    double beta_parallel = 0.0;
    double beta_gs_sq = 0.0;
};

ScatteredDecomposition scattered_decomposition(const ComplexField& fin, const ModeShape& shape) {
    const GridSpec& grid = fin.grid();
    std::vector<std::complex<double>> values(grid.node_count());
    for (int j = 0; j < grid.ny; ++j) {
        const double y = grid.y(j);
        for (int i = 0; i < grid.nx; ++i)
            values[static_cast<std::size_t>(j) * grid.nx + i] =
                fin.at(i, j) * shape.eval(grid.x(i), y);
    }
    ScatteredDecomposition out{ComplexField(grid, std::move(values)), 0.0, 0.0};
    out.beta_parallel = inner_product(fin, out.phi_uin).real();
    const double beta_sq = inner_product(out.phi_uin, out.phi_uin).real();
    out.beta_gs_sq = std::max(beta_sq - out.beta_parallel * out.beta_parallel, 0.0);
    return out;
}

// c(z0) = <u_det | u_in e^{2 i k z0 phi}> by trapezoid quadrature, with the
// detection mode given as a real superposition sampled on the same grid.
std::complex<double> screen_overlap(const ComplexField& det, const ComplexField& in,
                                    const ModeShape& shape, double two_k_z0) {
    const GridSpec& spec = det.grid();
    const double dA = spec.dx() * spec.dy();
    std::complex<double> sum = 0.0;
    for (int j = 0; j < spec.ny; ++j) {
        const double y = spec.y(j);
        const double wy = (j == 0 || j == spec.ny - 1) ? 0.5 : 1.0;
        std::complex<double> row = 0.0;
        for (int i = 0; i < spec.nx; ++i) {
            const double wx = (i == 0 || i == spec.nx - 1) ? 0.5 : 1.0;
            const double chi = two_k_z0 * shape.eval(spec.x(i), y);
            row += wx * std::conj(det.at(i, j)) * in.at(i, j) *
                   std::complex<double>(std::cos(chi), std::sin(chi));
        }
        sum += wy * row;
    }
    return sum * dA;
}

}  // namespace

void MisalignConfig::validate() const {
    if (!(receiver_waist > 0.0)) throw ValidationError("MisalignConfig: receiver waist must be positive");
    if (shift < 0.0) throw ValidationError("MisalignConfig: shift must be non-negative");
    if (!(downstream_efficiency > 0.0) || downstream_efficiency > 1.0)
        throw ValidationError("MisalignConfig: downstream efficiency must be in (0, 1]");
    if (!(channel_eta00 > 0.0) || channel_eta00 > 1.0)
        throw ValidationError("MisalignConfig: channel_eta00 must be in (0, 1]");
    if (!(channel_eta10 > 0.0) || channel_eta10 > 1.0)
        throw ValidationError("MisalignConfig: channel_eta10 must be in (0, 1]");
    if (!std::isfinite(mode_rotation) || !std::isfinite(shift_direction))
        throw ValidationError("MisalignConfig: non-finite angle");
}

EfficiencyResult efficiency_closed_form(const MisalignConfig& cfg, const BeamParams& beam) {
    cfg.validate();
    beam.validate();

    const double cphi = std::cos(cfg.mode_rotation);
    if (std::abs(cphi) < 1e-12)
        throw ValidationError("efficiency_closed_form: cos(phi) = 0, model undefined");

    const double u = cfg.shift * cfg.shift / (cfg.receiver_waist * cfg.receiver_waist);
    const double denom = 1.0 - 0.5 * u * (1.0 + std::cos(cfg.mode_rotation - 2.0 * cfg.shift_direction) / cphi);

    EfficiencyResult r;
    r.method = EfficiencyResult::Method::closed_form;
    r.eta = cfg.downstream_efficiency * std::exp(-u) * cphi * cphi * denom * denom;
    if (r.eta < kSingularEta) {
        r.eta = 0.0;
        r.singular = true;
        r.imprecision = std::numeric_limits<double>::infinity();
        return r;
    }
    r.imprecision = imprecision_angle(beam) / r.eta;
    return r;
}

std::pair<double, double> coupling_efficiency(const MisalignConfig& cfg, double x) {
    cfg.validate();
    const double u = x * x / (cfg.receiver_waist * cfg.receiver_waist);
    const double c = std::cos(cfg.shift_direction);
    return {cfg.channel_eta00 * std::exp(-u),
            cfg.channel_eta10 * u * std::exp(-u) * c * c};
}

DetectionModes detection_modes(const MisalignConfig& cfg, double waist) {
    cfg.validate();
    if (!(waist > 0.0)) throw ValidationError("detection_modes: waist must be positive");

    const double sx = cfg.shift * std::cos(cfg.shift_direction);
    const double sy = cfg.shift * std::sin(cfg.shift_direction);

    OpticalMode base{0, 0, waist, sx, sy, 0.0};
    DetectionModes out;
    out.fundamental = base;

    OpticalMode u10 = base, u01 = base;
    u10.m = 1;
    u01.n = 1;
    out.first_order.terms = {{std::cos(cfg.mode_rotation), u10},
                             {std::sin(cfg.mode_rotation), u01}};
    return out;
}

namespace {

// Central-difference slope of the signal-quadrature amplitude Im c(z0) at the
// undisplaced operating point.
double amplitude_slope(const ComplexField& det, const ComplexField& in,
                       const ModeShape& shape, double k, double probe_phase) {
    const double dz = probe_phase / (2.0 * k);
    const std::complex<double> cp = screen_overlap(det, in, shape, 2.0 * k * dz);
    const std::complex<double> cm = screen_overlap(det, in, shape, -2.0 * k * dz);
    return (cp.imag() - cm.imag()) / (2.0 * dz);
}

}  // namespace

EfficiencyResult efficiency_numeric(const MisalignConfig& cfg, const BeamParams& beam,
                                    const ModeShape& shape, const GridSpec& grid,
                                    double probe_phase,
                                    const std::optional<ModeSuperposition>& detection_override) {
    cfg.validate();
    beam.validate();
    grid.validate();
    if (!(probe_phase > 0.0) || probe_phase > 1e-3)
        throw ValidationError("efficiency_numeric: probe phase must be in (0, 1e-3]");

    const double w0 = beam.waist;
    const double k = beam.wavenumber();
    const double n_flux = beam.photon_flux();

    // Reference: ideal readout of the orthogonal scattered mode itself, whose
    // coupling is beta_gs^2 = beta^2 - beta_par^2 on this same grid. The
    // efficiency then equals |<u_det|u_perp>|^2 for any shape, not only in
    // the wide-ribbon limit.
    OpticalMode u_in{0, 0, w0, 0.0, 0.0, 0.0};
    ComplexField fin = sample_mode(u_in, grid);
    ScatteredDecomposition scattered = scattered_decomposition(fin, shape);
    if (!(scattered.beta_gs_sq > 0.0))
        throw ValidationError("efficiency_numeric: shape scatters no orthogonal light");
    const double s_ref = 1.0 / (8.0 * n_flux * k * k * scattered.beta_gs_sq);

    // receiver geometry mapped onto the sample plane by the waist ratio
    MisalignConfig scaled = cfg;
    scaled.shift = cfg.shift * w0 / cfg.receiver_waist;
    scaled.receiver_waist = w0;

    ModeSuperposition det = detection_override
                                ? *detection_override
                                : detection_modes(scaled, w0).first_order;

    ComplexField fdet = det.sample(grid);
    const double slope = amplitude_slope(fdet, fin, shape, k, probe_phase);

    EfficiencyResult r;
    r.method = EfficiencyResult::Method::numeric;
    if (std::abs(slope) < 1e-9 * k) {  // no linear signal in this port
        r.eta = 0.0;
        r.singular = true;
        r.imprecision = std::numeric_limits<double>::infinity();
        return r;
    }
    const double s_det = 1.0 / (2.0 * cfg.downstream_efficiency * n_flux * slope * slope);
    r.eta = s_ref / s_det;
    r.imprecision = imprecision_angle(beam) / r.eta;
    return r;
}

double efficiency_overlap_route(const MisalignConfig& cfg, const BeamParams& beam,
                                const ModeShape& shape, const GridSpec& grid) {
    cfg.validate();
    beam.validate();

    const double w0 = beam.waist;
    MisalignConfig scaled = cfg;
    scaled.shift = cfg.shift * w0 / cfg.receiver_waist;
    scaled.receiver_waist = w0;

    ModeSuperposition det = detection_modes(scaled, w0).first_order;
    ComplexField fdet = det.sample(grid);

    // u_perp by Gram-Schmidt of phi*u_in against u_in
    OpticalMode u_in{0, 0, w0, 0.0, 0.0, 0.0};
    ComplexField fin = sample_mode(u_in, grid);
    ScatteredDecomposition scattered = scattered_decomposition(fin, shape);
    if (!(scattered.beta_gs_sq > 0.0)) return 0.0;

    // <u_det|v>/||v|| with v = phi u_in - beta_par u_in
    const double ov = (inner_product(fdet, scattered.phi_uin).real() -
                       scattered.beta_parallel * inner_product(fdet, fin).real()) /
                      std::sqrt(scattered.beta_gs_sq);
    return cfg.downstream_efficiency * ov * ov;
}

Hg00Imprecision hg00_imprecision(const MisalignConfig& cfg, const BeamParams& beam,
                                 const ModeShape& shape, double ribbon_width,
                                 const GridSpec& grid, double probe_phase) {
    cfg.validate();
    beam.validate();
    grid.validate();
    if (!(ribbon_width > 0.0)) throw ValidationError("hg00_imprecision: ribbon width must be positive");

    const double w0 = beam.waist;
    const double k = beam.wavenumber();
    const double n_flux = beam.photon_flux();

    MisalignConfig scaled = cfg;
    scaled.shift = cfg.shift * w0 / cfg.receiver_waist;
    scaled.receiver_waist = w0;

    OpticalMode u_in{0, 0, w0, 0.0, 0.0, 0.0};
    ComplexField fdet = sample_mode(detection_modes(scaled, w0).fundamental, grid);
    ComplexField fin = sample_mode(u_in, grid);
    const double slope = amplitude_slope(fdet, fin, shape, k, probe_phase);

    Hg00Imprecision out;
    if (std::abs(slope) < 1e-9 * k) {
        out.unbounded = true;
        out.value = std::numeric_limits<double>::infinity();
        out.note = "HG00 port power is quadratic in z0 at the aligned, undisplaced point";
        return out;
    }
    const double conv = 2.0 / ribbon_width;  // z0 -> theta conversion
    out.value = conv * conv /
                (2.0 * cfg.downstream_efficiency * n_flux * slope * slope);
    return out;
}

}  // namespace spade
