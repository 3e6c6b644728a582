#include "overlap.hpp"

#include <cmath>

#include "errors.hpp"

namespace spade {

namespace {

// <f | phi * g> with phi evaluated at (x, y - y_shift).
double overlap_with_shape(const ComplexField& f, const ComplexField& g,
                          const ModeShape& shape, double y_shift = 0.0) {
    const GridSpec& spec = f.grid();
    const double dA = spec.dx() * spec.dy();
    double sum = 0.0;
    for (int j = 0; j < spec.ny; ++j) {
        const double y = spec.y(j);
        const double wy = (j == 0 || j == spec.ny - 1) ? 0.5 : 1.0;
        double row = 0.0;
        for (int i = 0; i < spec.nx; ++i) {
            const double wx = (i == 0 || i == spec.nx - 1) ? 0.5 : 1.0;
            const double phi = shape.eval(spec.x(i), y - y_shift);
            row += wx * phi * (std::conj(f.at(i, j)) * g.at(i, j)).real();
        }
        sum += wy * row;
    }
    return sum * dA;
}

double overlap_with_shape_sq(const ComplexField& f, const ModeShape& shape) {
    const GridSpec& spec = f.grid();
    const double dA = spec.dx() * spec.dy();
    double sum = 0.0;
    for (int j = 0; j < spec.ny; ++j) {
        const double y = spec.y(j);
        const double wy = (j == 0 || j == spec.ny - 1) ? 0.5 : 1.0;
        double row = 0.0;
        for (int i = 0; i < spec.nx; ++i) {
            const double wx = (i == 0 || i == spec.nx - 1) ? 0.5 : 1.0;
            const double phi = shape.eval(spec.x(i), y);
            row += wx * phi * phi * std::norm(f.at(i, j));
        }
        sum += wy * row;
    }
    return sum * dA;
}

struct BetaTriple {
    double par, perp, sq;
};

BetaTriple betas_on_grid(const OpticalMode& u_in, const OpticalMode& u_perp,
                         const ModeShape& shape, const GridSpec& grid, bool* truncated) {
    ComplexField fin = sample_mode(u_in, grid);
    ComplexField fperp = sample_mode(u_perp, grid);
    if (truncated) *truncated = fin.truncation_warning() || fperp.truncation_warning();
    return {overlap_with_shape(fin, fin, shape),
            overlap_with_shape(fperp, fin, shape),
            overlap_with_shape_sq(fin, shape)};
}

}  // namespace

CouplingResult couplings(const OpticalMode& u_in, const OpticalMode& u_perp,
                         const ModeShape& shape, const GridSpec& grid) {
    u_in.validate();
    u_perp.validate();
    grid.validate();

    bool truncated = false;
    BetaTriple coarse = betas_on_grid(u_in, u_perp, shape, grid, &truncated);
    BetaTriple fine = betas_on_grid(u_in, u_perp, shape, grid.refined(), nullptr);

    CouplingResult r;
    r.beta_parallel = fine.par;
    r.beta_perp = fine.perp;
    r.beta_sq = fine.sq;
    r.convergence = std::max({std::abs(fine.par - coarse.par),
                              std::abs(fine.perp - coarse.perp),
                              std::abs(fine.sq - coarse.sq)});
    r.truncation_warning = truncated;
    return r;
}

void ScatteringState::validate() const {
    incident.validate();
    if (shape == nullptr) throw ValidationError("ScatteringState: missing modeshape");
    if (!(wavenumber > 0.0)) throw ValidationError("ScatteringState: wavenumber must be positive");
    if (!std::isfinite(displacement)) throw ValidationError("ScatteringState: non-finite displacement");
}

bool ScatteringState::linearization_suspect() const {
    // max|phi| = 1 by modeshape normalization
    return std::abs(2.0 * wavenumber * displacement) > 0.1;
}

ReflectedField reflected_field(const ScatteringState& state, const GridSpec& grid,
                               bool linearize, const std::optional<OpticalMode>& u_perp) {
    state.validate();
    grid.validate();

    ComplexField fin = sample_mode(state.incident, grid);
    const double two_kz = 2.0 * state.wavenumber * state.displacement;

    if (!linearize) {
        std::vector<std::complex<double>> values(grid.node_count());
        for (int j = 0; j < grid.ny; ++j) {
            const double y = grid.y(j);
            for (int i = 0; i < grid.nx; ++i) {
                const double chi = two_kz * state.shape->eval(grid.x(i), y);
                values[static_cast<std::size_t>(j) * grid.nx + i] =
                    fin.at(i, j) * std::complex<double>(std::cos(chi), std::sin(chi));
            }
        }
        return {ComplexField(grid, std::move(values), fin.truncation_warning()),
                state.linearization_suspect()};
    }

    // First-order expansion. The orthogonal mode either comes from the caller
    // (HG10 for the torsion specialization) or from Gram-Schmidt of phi*u_in.
    std::vector<std::complex<double>> values(grid.node_count());
    const std::complex<double> pref(0.0, two_kz);

    if (u_perp) {
        bool trunc = false;
        BetaTriple b = betas_on_grid(state.incident, *u_perp, *state.shape, grid, &trunc);
        ComplexField fperp = sample_mode(*u_perp, grid);
        for (std::size_t kidx = 0; kidx < values.size(); ++kidx)
            values[kidx] = fin.values()[kidx] +
                           pref * (b.par * fin.values()[kidx] + b.perp * fperp.values()[kidx]);
        return {ComplexField(grid, std::move(values), trunc || fin.truncation_warning()),
                state.linearization_suspect()};
    }

    // Gram-Schmidt: v = phi u_in - <u_in|phi u_in> u_in, u_perp = v/||v||.
    const GridSpec& spec = grid;
    std::vector<std::complex<double>> phi_uin(grid.node_count());
    for (int j = 0; j < spec.ny; ++j) {
        const double y = spec.y(j);
        for (int i = 0; i < spec.nx; ++i)
            phi_uin[static_cast<std::size_t>(j) * spec.nx + i] =
                fin.at(i, j) * state.shape->eval(spec.x(i), y);
    }
    ComplexField fphi(grid, std::move(phi_uin), fin.truncation_warning());
    const double beta_par = inner_product(fin, fphi).real();

    std::vector<std::complex<double>> v(grid.node_count());
    for (std::size_t kidx = 0; kidx < v.size(); ++kidx)
        v[kidx] = fphi.values()[kidx] - beta_par * fin.values()[kidx];
    ComplexField fv(grid, std::move(v), false);
    const double vnorm = std::sqrt(std::max(inner_product(fv, fv).real(), 0.0));

    double beta_perp = vnorm;  // <phi u_in | v/||v||> = ||v||
    for (std::size_t kidx = 0; kidx < values.size(); ++kidx) {
        std::complex<double> uperp = vnorm > 0.0 ? fv.values()[kidx] / vnorm : 0.0;
        values[kidx] = fin.values()[kidx] +
                       pref * (beta_par * fin.values()[kidx] + beta_perp * uperp);
    }
    return {ComplexField(grid, std::move(values), fin.truncation_warning()),
            state.linearization_suspect()};
}

CouplingScan coupling_scan(const OpticalMode& u_in, const ModeShape& shape,
                           double y0_min, double y0_max, int n_points,
                           const GridSpec& grid) {
    u_in.validate();
    grid.validate();
    if (n_points < 2) throw ValidationError("coupling_scan: need at least 2 scan points");
    if (!(y0_max > y0_min)) throw ValidationError("coupling_scan: empty scan range");

    OpticalMode u10 = u_in, u01 = u_in;
    u10.m = 1; u10.n = 0;
    u01.m = 0; u01.n = 1;

    ComplexField f00 = sample_mode(u_in, grid);
    ComplexField f10 = sample_mode(u10, grid);
    ComplexField f01 = sample_mode(u01, grid);

    CouplingScan scan;
    // derivative proxy only meaningful for a spot well inside the ribbon
    scan.spot_size_warning = u_in.waist > shape.half_width() / 5.0 ||
                             u_in.waist > shape.half_length() / 5.0;

    scan.rows.reserve(n_points);
    const double step = (y0_max - y0_min) / (n_points - 1);
    for (int p = 0; p < n_points; ++p) {
        CouplingScanRow row;
        row.y0 = y0_min + p * step;
        row.beta10 = overlap_with_shape(f10, f00, shape, row.y0);
        row.beta01 = overlap_with_shape(f01, f00, shape, row.y0);
        auto [gx, gy] = shape.gradient(0.0, row.y0);
        row.dphidx = gx;
        row.dphidy = gy;
        row.off_ribbon = std::abs(row.y0) > shape.half_length();
        scan.rows.push_back(row);
    }
    return scan;
}

}  // namespace spade
