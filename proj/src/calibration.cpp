#include "calibration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "constants.hpp"
#include "errors.hpp"
#include "rng.hpp"

namespace spade {

namespace {

double mean(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += v[i];
    return s / std::max<std::size_t>(hi - lo, 1);
}

double vec_mean(const std::vector<double>& v) { return mean(v, 0, v.size()); }

double stddev(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double m = vec_mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / (v.size() - 1));
}

}  // namespace

// ---------------------------------------------------------------------------
// Thermal-wing calibration
// ---------------------------------------------------------------------------

namespace {

struct LorentzFit {
    double amplitude = 0.0;  // V^2/Hz
    double center = 0.0;     // Hz
    double gamma = 0.0;      // rad/s
    double floor = 0.0;      // V^2/Hz
    int evaluations = 0;
    bool converged = false;
};

double lorentz_model(double f, const LorentzFit& p) {
    const double q = 4.0 * constants::pi * (f - p.center) / p.gamma;
    return p.amplitude / (1.0 + q * q) + p.floor;
}

// One weighted simplex pass over the selected window bins.
LorentzFit lorentz_pass(const std::vector<double>& freq, const std::vector<double>& psd,
                        const std::vector<std::size_t>& window, const std::vector<double>& weights,
                        const LorentzFit& init, const SimplexOptions& sopts) {
    const double f_ref = init.center;
    const double gamma_ref = init.gamma;

    auto unpack = [&](const std::vector<double>& p) {
        LorentzFit fit;
        fit.amplitude = std::exp(p[0]);
        fit.center = f_ref + p[1] * gamma_ref / (2.0 * constants::pi);
        fit.gamma = std::exp(p[2]);
        fit.floor = std::exp(p[3]);
        return fit;
    };

    auto objective = [&](const std::vector<double>& p) {
        const LorentzFit fit = unpack(p);
        double ssr = 0.0;
        for (std::size_t wi = 0; wi < window.size(); ++wi) {
            const std::size_t i = window[wi];
            const double r = psd[i] - lorentz_model(freq[i], fit);
            ssr += weights[wi] * r * r;
        }
        return ssr;
    };

    std::vector<double> p0 = {std::log(init.amplitude), 0.0, std::log(init.gamma),
                              std::log(init.floor)};
    SimplexResult res = nelder_mead(objective, p0, sopts);
    LorentzFit fit = unpack(res.x);
    fit.evaluations = res.evaluations;
    fit.converged = res.converged;
    return fit;
}

struct WindowSetup {
    std::vector<std::size_t> bins;
    LorentzFit init;
};

WindowSetup select_window(const std::vector<double>& freq, const std::vector<double>& psd,
                          const CalibrationOptions& opts) {
    const std::size_t n = freq.size();

    // peak bin, ties toward lower frequency
    std::size_t peak = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (psd[i] > psd[peak]) peak = i;

    // floors from the outer deciles
    const auto decile = std::max<std::size_t>(n / 10, 1);
    const double floor0 =
        0.5 * (mean(psd, 0, decile) + mean(psd, n - decile, n));
    const double amp0 = std::max(psd[peak] - floor0, 1e-300);

    // second-moment width of the above-half-maximum region
    double m0 = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = psd[i] - floor0;
        if (v >= 0.5 * amp0) {
            m0 += v;
            m2 += v * (freq[i] - freq[peak]) * (freq[i] - freq[peak]);
        }
    }
    const double df = freq[1] - freq[0];
    double sigma_f = m0 > 0.0 ? std::sqrt(m2 / m0) : df;
    sigma_f = std::max(sigma_f, 0.25 * df);
    // half width at half maximum of a Lorentzian is 1.913x the second moment
    // of its above-half region; gamma = 4 pi hwhm_f
    double gamma0 = 4.0 * constants::pi * 1.913 * sigma_f;

    WindowSetup setup;
    setup.init.amplitude = amp0;
    setup.init.center = freq[peak];
    setup.init.gamma = gamma0;
    setup.init.floor = std::max(floor0, 1e-300);

    const double lo = opts.wing_lo_gammas * gamma0 / (2.0 * constants::pi);
    const double hi = opts.wing_hi_gammas * gamma0 / (2.0 * constants::pi);
    const auto floor_bins = static_cast<std::size_t>(opts.floor_fraction * n);
    for (std::size_t i = 0; i < n; ++i) {
        const double det = std::abs(freq[i] - freq[peak]);
        const bool wing = det >= lo && det <= hi;
        const bool outer = i < floor_bins || i + floor_bins >= n;
        if (wing || outer) setup.bins.push_back(i);
    }
    if (setup.bins.size() < 8)
        throw ValidationError("calibrate_spectrum: wing window selects too few bins");
    return setup;
}

std::vector<double> relative_weights(const std::vector<double>& freq,
                                     const std::vector<std::size_t>& window,
                                     const LorentzFit& model) {
    std::vector<double> w(window.size());
    for (std::size_t wi = 0; wi < window.size(); ++wi) {
        const double m = lorentz_model(freq[window[wi]], model);
        w[wi] = 1.0 / std::max(m * m, 1e-300);
    }
    return w;
}

LorentzFit fit_lorentzian(const std::vector<double>& freq, const std::vector<double>& psd,
                          const WindowSetup& setup, const CalibrationOptions& opts) {
    // Periodogram bins have sigma proportional to the model value and the
    // window spans several decades, so every pass uses relative-error weights:
    // first from the robust initializer, then re-derived from the fit itself.
    LorentzFit pass1 = lorentz_pass(freq, psd, setup.bins,
                                    relative_weights(freq, setup.bins, setup.init), setup.init,
                                    opts.simplex);
    if (!(pass1.amplitude > 0.0) || !(pass1.gamma > 0.0))
        throw FitError("calibrate_spectrum: wing fit collapsed");

    return lorentz_pass(freq, psd, setup.bins, relative_weights(freq, setup.bins, pass1), pass1,
                        opts.simplex);
}

}  // namespace

CalibrationResult calibrate_spectrum(const SpectrumRecord& raw, const SpectrumRecord& detector,
                                     const MechanicalMode& mode, const BeamParams& beam,
                                     const CalibrationOptions& opts) {
    raw.validate();
    detector.validate();
    mode.validate();
    beam.validate();
    if (raw.frequency != detector.frequency)
        throw ValidationError("calibrate_spectrum: raw and detector grids differ");

    const double gamma_m = mode.linewidth();
    const double reach = 100.0 * gamma_m / (2.0 * constants::pi);
    if (raw.frequency.front() > mode.frequency - reach ||
        raw.frequency.back() < mode.frequency + reach)
        throw ValidationError("calibrate_spectrum: grid must cover f_m +- 100 Gamma/2pi");

    WindowSetup setup = select_window(raw.frequency, raw.psd, opts);
    LorentzFit fit = fit_lorentzian(raw.frequency, raw.psd, setup, opts);
    if (!fit.converged) {
        char best[256];
        std::snprintf(best, sizeof best,
                      "best so far: amplitude %.6g V^2/Hz, center %.6f Hz, gamma %.6g rad/s, "
                      "floor %.6g V^2/Hz after %d evaluations",
                      fit.amplitude, fit.center, fit.gamma, fit.floor, fit.evaluations);
        throw FitError(std::string("calibrate_spectrum: wing fit did not converge; ") + best);
    }

    const double s_peak = thermal_peak(mode);
    const double detector_mean = vec_mean(detector.psd);

    // The wings only pin the product A Gamma^2 (the core is excluded), so the
    // gain is solved by matching the fitted wing coefficient to the thermal
    // model at the mode's known linewidth: g = A (Gamma/Gamma_m)^2 / S_peak.
    auto derive = [&](const LorentzFit& f) {
        CalibrationResult r;
        r.gain = f.amplitude * (f.gamma / gamma_m) * (f.gamma / gamma_m) / s_peak;
        r.center_frequency = f.center;
        r.linewidth_hz = f.gamma / (2.0 * constants::pi);
        r.thermal_peak = s_peak;
        r.detector_mean = detector_mean;
        r.floor = f.floor / r.gain;
        r.imprecision = (f.floor - detector_mean) / r.gain;
        r.eta = imprecision_angle(beam) / r.imprecision;
        return r;
    };

    if (fit.floor <= detector_mean)
        throw FitError("calibrate_spectrum: fitted floor sits below the detector noise "
                       "(negative imprecision, model misfit)");

    CalibrationResult result = derive(fit);
    result.fit.names = {"amplitude_v2_per_hz", "center_frequency_hz", "gamma_rad_per_s",
                        "floor_v2_per_hz"};
    result.fit.parameters = {fit.amplitude, fit.center, fit.gamma, fit.floor};
    result.fit.residual_norm = 0.0;
    for (std::size_t i : setup.bins) {
        const double r = raw.psd[i] - lorentz_model(raw.frequency[i], fit);
        result.fit.residual_norm += r * r;
    }
    result.fit.residual_norm = std::sqrt(result.fit.residual_norm);
    result.fit.iterations = fit.evaluations;
    result.fit.converged = fit.converged;

    // Residual bootstrap for the derived quantities. Window values span
    // several decades with sigma proportional to the model, so standardized
    // residuals r/model are resampled and reapplied multiplicatively.
    if (opts.bootstrap_resamples > 0) {
        std::vector<double> rel_residual(setup.bins.size());
        std::vector<double> model(setup.bins.size());
        std::vector<double> weights(setup.bins.size());
        for (std::size_t wi = 0; wi < setup.bins.size(); ++wi) {
            const std::size_t i = setup.bins[wi];
            model[wi] = lorentz_model(raw.frequency[i], fit);
            rel_residual[wi] = (raw.psd[i] - model[wi]) / model[wi];
            weights[wi] = 1.0 / std::max(model[wi] * model[wi], 1e-300);
        }

        std::vector<double> gs, fcs, gws, simps, etas;
        std::vector<double> resampled = raw.psd;
        SimplexOptions bopts = opts.simplex;
        bopts.initial_step = 0.01;
        for (int b = 0; b < opts.bootstrap_resamples; ++b) {
            Rng rng(opts.bootstrap_seed + static_cast<std::uint64_t>(b));
            for (std::size_t wi = 0; wi < setup.bins.size(); ++wi) {
                const auto pick = std::min(
                    static_cast<std::size_t>(rng.uniform() * rel_residual.size()),
                    rel_residual.size() - 1);
                resampled[setup.bins[wi]] = model[wi] * (1.0 + rel_residual[pick]);
            }
            LorentzFit bf =
                lorentz_pass(raw.frequency, resampled, setup.bins, weights, fit, bopts);
            if (!(bf.amplitude > 0.0) || bf.floor <= detector_mean) continue;
            CalibrationResult br = derive(bf);
            gs.push_back(br.gain);
            fcs.push_back(br.center_frequency);
            gws.push_back(br.linewidth_hz);
            simps.push_back(br.imprecision);
            etas.push_back(br.eta);
        }
        result.gain_uncertainty = stddev(gs);
        result.center_frequency_uncertainty = stddev(fcs);
        result.linewidth_uncertainty = stddev(gws);
        result.imprecision_uncertainty = stddev(simps);
        result.eta_uncertainty = stddev(etas);
    }
    return result;
}

SpectrumRecord calibrated_spectrum(const SpectrumRecord& raw, const CalibrationResult& cal) {
    raw.validate();
    SpectrumRecord out;
    out.frequency = raw.frequency;
    out.units = PsdUnits::rad2_per_hz;
    out.n_avg = raw.n_avg;
    out.psd.reserve(raw.psd.size());
    for (double v : raw.psd)
        out.psd.push_back(std::max((v - cal.detector_mean) / cal.gain, 0.0));
    return out;
}

// ---------------------------------------------------------------------------
// Shot-noise scaling
// ---------------------------------------------------------------------------

FitReport fit_shot_scaling(const std::vector<ShotScalingPoint>& series, double f_threshold) {
    std::vector<double> p, v;
    for (const auto& pt : series) {
        p.push_back(pt.power);
        v.push_back(pt.psd);
    }
    std::vector<double> distinct = p;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 3)
        throw ValidationError("fit_shot_scaling: need at least 3 distinct powers");

    LinearFit lin = linear_least_squares(p, v);
    QuadraticFit quad = quadratic_least_squares(p, v);

    double scale = 0.0;
    for (double y : v) scale += y * y;

    FitReport rep;
    rep.names = {"slope_v2_per_hz_per_w", "intercept_v2_per_hz"};
    rep.parameters = {lin.slope, lin.intercept};
    rep.residual_norm = std::sqrt(lin.ssr);
    rep.iterations = 1;
    rep.converged = true;

    bool shot_consistent;
    if (lin.ssr <= 1e-20 * scale) {
        shot_consistent = true;
    } else if (p.size() > 3 && quad.ssr > 0.0) {
        const double f_ratio = (lin.ssr - quad.ssr) / (quad.ssr / (p.size() - 3));
        shot_consistent = f_ratio < f_threshold;
    } else {
        shot_consistent = false;  // quadratic interpolates exactly, linear does not
    }
    rep.flags.push_back(shot_consistent ? "shot-consistent" : "not-shot-consistent");
    return rep;
}

// ---------------------------------------------------------------------------
// Knife edge
// ---------------------------------------------------------------------------

namespace {

double knife_model(double x, double amplitude, double edge, double waist, double baseline,
                   double sign) {
    return 0.5 * amplitude * (1.0 + sign * std::erf(std::sqrt(2.0) * (x - edge) / waist)) +
           baseline;
}

// position where the (sorted, sign-corrected) profile crosses a level
double crossing(const std::vector<double>& x, const std::vector<double>& y, double level) {
    for (std::size_t i = 1; i < x.size(); ++i) {
        if ((y[i - 1] - level) * (y[i] - level) <= 0.0 && y[i] != y[i - 1]) {
            const double t = (level - y[i - 1]) / (y[i] - y[i - 1]);
            return x[i - 1] + t * (x[i] - x[i - 1]);
        }
    }
    return x[x.size() / 2];
}

}  // namespace

FitReport fit_knife_edge(const std::vector<KnifeEdgePoint>& profile, const KnifeEdgeOptions& opts) {
    if (profile.size() < 6)
        throw ValidationError("fit_knife_edge: need at least 6 points across the transition");

    std::vector<KnifeEdgePoint> data = profile;
    std::sort(data.begin(), data.end(),
              [](const KnifeEdgePoint& a, const KnifeEdgePoint& b) { return a.position < b.position; });
    std::vector<double> x, y;
    for (const auto& pt : data) {
        x.push_back(pt.position);
        y.push_back(pt.power);
    }

    // monotone dominance: the transition must show up as a clear trend
    LinearFit trend = linear_least_squares(x, y);
    double sy = 0.0, my = vec_mean(y);
    for (double v : y) sy += (v - my) * (v - my);
    const double explained = sy > 0.0 ? 1.0 - trend.ssr / sy : 0.0;
    if (explained < 0.04)
        throw FitError("fit_knife_edge: data are not monotone-dominant, cannot locate a transition");
    const double sign = trend.slope >= 0.0 ? 1.0 : -1.0;

    const auto decile = std::max<std::size_t>(data.size() / 10, 1);
    const double low = sign > 0 ? mean(y, 0, decile) : mean(y, y.size() - decile, y.size());
    const double high = sign > 0 ? mean(y, y.size() - decile, y.size()) : mean(y, 0, decile);
    const double amp0 = std::max(high - low, 1e-300);

    // half-rise position and quartile span initialize edge and waist
    const double x50 = crossing(x, y, low + 0.5 * amp0);
    const double x25 = crossing(x, y, low + (sign > 0 ? 0.25 : 0.75) * amp0);
    const double x75 = crossing(x, y, low + (sign > 0 ? 0.75 : 0.25) * amp0);
    // erf quartiles sit at +-0.4769 sqrt(2)/2 waists: |x75-x25| = 0.6745 w
    double w0 = std::abs(x75 - x25) / 0.6745;
    double min_dx = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < x.size(); ++i) min_dx = std::min(min_dx, x[i] - x[i - 1]);
    w0 = std::max(w0, 0.5 * min_dx);

    auto objective = [&](const std::vector<double>& p) {
        const double amp = std::exp(p[0]);
        const double edge = p[1];
        const double waist = std::exp(p[2]);
        const double base = p[3];
        double ssr = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double r = y[i] - knife_model(x[i], amp, edge, waist, base, sign);
            ssr += r * r;
        }
        return ssr;
    };

    std::vector<double> p0 = {std::log(amp0), x50, std::log(w0), low};
    SimplexOptions sopts = opts.simplex;
    SimplexResult res = nelder_mead(objective, p0, sopts);
    if (!res.converged)
        throw FitError("fit_knife_edge: simplex did not converge");

    FitReport rep;
    rep.names = {"waist_m", "edge_m", "amplitude_w", "baseline_w", "sign"};
    rep.parameters = {std::exp(res.x[2]), res.x[1], std::exp(res.x[0]), res.x[3], sign};
    rep.residual_norm = std::sqrt(res.fmin);
    rep.iterations = res.evaluations;
    rep.converged = true;
    if (rep.parameters[0] < min_dx)
        rep.flags.push_back("waist-below-resolution");

    if (opts.bootstrap_resamples > 0) {
        std::vector<double> resid(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            resid[i] = y[i] - knife_model(x[i], std::exp(res.x[0]), res.x[1], std::exp(res.x[2]),
                                          res.x[3], sign);
        std::vector<double> waists, edges;
        std::vector<double> yb(y.size());
        for (int b = 0; b < opts.bootstrap_resamples; ++b) {
            Rng rng(opts.bootstrap_seed + static_cast<std::uint64_t>(b));
            for (std::size_t i = 0; i < y.size(); ++i) {
                const auto pick = static_cast<std::size_t>(rng.uniform() * resid.size());
                yb[i] = (y[i] - resid[i]) + resid[std::min(pick, resid.size() - 1)];
            }
            auto obj_b = [&](const std::vector<double>& p) {
                const double amp = std::exp(p[0]);
                double ssr = 0.0;
                for (std::size_t i = 0; i < x.size(); ++i) {
                    const double r = yb[i] - knife_model(x[i], amp, p[1], std::exp(p[2]), p[3], sign);
                    ssr += r * r;
                }
                return ssr;
            };
            SimplexResult rb = nelder_mead(obj_b, res.x, sopts);
            waists.push_back(std::exp(rb.x[2]));
            edges.push_back(rb.x[1]);
        }
        rep.uncertainties = {stddev(waists), stddev(edges), 0.0, 0.0, 0.0};
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Ringdown
// ---------------------------------------------------------------------------

FitReport fit_ringdown(const RingdownRecord& record, double frequency_hz,
                       const RingdownOptions& opts) {
    record.validate();
    if (!(frequency_hz > 0.0)) throw ValidationError("fit_ringdown: frequency must be positive");

    const std::vector<double>& t = record.time;
    const std::vector<double>& a = record.amplitude;
    const auto decile = std::max<std::size_t>(t.size() / 10, 1);
    const double head = mean(a, 0, decile);
    const double tail = mean(a, a.size() - decile, a.size());
    if (!(head > tail * 1.001) || head <= 0.0)
        throw FitError("fit_ringdown: no decay detectable above the floor");

    const double floor0 = std::max(tail, 0.0);
    const double amp0 = head - floor0;
    // first crossing of floor + amp/e initializes tau
    double tau0 = t.back() - t.front();
    const double level = floor0 + amp0 * 0.36787944117144233;
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (a[i] <= level) {
            tau0 = std::max(t[i] - t.front(), t[1] - t[0]);
            break;
        }
    }

    auto make_objective = [&](const std::vector<double>& yy, const std::vector<double>& weights) {
        return [&t, &yy, &weights](const std::vector<double>& p) {
            const double amp = std::exp(p[0]);
            const double tau = std::exp(p[1]);
            const double floor = p[2];
            double ssr = 0.0;
            for (std::size_t i = 0; i < t.size(); ++i) {
                const double r = yy[i] - (amp * std::exp(-t[i] / tau) + floor);
                ssr += weights[i] * r * r;
            }
            return ssr;
        };
    };

    // pass 1 unweighted, pass 2 with relative weights from the pass-1 model
    std::vector<double> w1(t.size(), 1.0);
    std::vector<double> p0 = {std::log(amp0), std::log(tau0), floor0};
    SimplexResult pass1 = nelder_mead(make_objective(a, w1), p0, opts.simplex);

    std::vector<double> w2(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double m = std::exp(pass1.x[0]) * std::exp(-t[i] / std::exp(pass1.x[1])) + pass1.x[2];
        w2[i] = 1.0 / std::max(m * m, 1e-300);
    }
    SimplexResult res = nelder_mead(make_objective(a, w2), pass1.x, opts.simplex);
    if (!res.converged) throw FitError("fit_ringdown: simplex did not converge");

    const double tau = std::exp(res.x[1]);
    FitReport rep;
    rep.names = {"quality_factor", "tau_s", "amplitude", "floor"};
    rep.parameters = {constants::pi * frequency_hz * tau, tau, std::exp(res.x[0]), res.x[2]};
    rep.residual_norm = std::sqrt(res.fmin);
    rep.iterations = res.evaluations;
    rep.converged = true;
    if (t.back() - t.front() < tau) rep.flags.push_back("information-limited");

    if (opts.bootstrap_resamples > 0) {
        std::vector<double> model(t.size()), resid(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) {
            model[i] = std::exp(res.x[0]) * std::exp(-t[i] / tau) + res.x[2];
            resid[i] = a[i] - model[i];
        }
        std::vector<double> qs, taus;
        std::vector<double> yb(t.size());
        for (int b = 0; b < opts.bootstrap_resamples; ++b) {
            Rng rng(opts.bootstrap_seed + static_cast<std::uint64_t>(b));
            for (std::size_t i = 0; i < t.size(); ++i) {
                const auto pick = static_cast<std::size_t>(rng.uniform() * resid.size());
                yb[i] = model[i] + resid[std::min(pick, resid.size() - 1)];
            }
            SimplexResult rb = nelder_mead(make_objective(yb, w2), res.x, opts.simplex);
            const double tb = std::exp(rb.x[1]);
            taus.push_back(tb);
            qs.push_back(constants::pi * frequency_hz * tb);
        }
        rep.uncertainties = {stddev(qs), stddev(taus), 0.0, 0.0};
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Channel-coupling model (joint fit sharing the waist)
// ---------------------------------------------------------------------------

FitReport fit_coupling_model(const std::vector<CouplingDataPoint>& data,
                             const CouplingFitOptions& opts) {
    if (data.size() < 5)
        throw ValidationError("fit_coupling_model: need at least 5 offsets");

    double max00 = 0.0, max10 = 0.0, x_at_max10 = 0.0, xmax = 0.0;
    for (const auto& d : data) {
        max00 = std::max(max00, d.eta00);
        if (d.eta10 > max10) {
            max10 = d.eta10;
            x_at_max10 = d.x;
        }
        xmax = std::max(xmax, std::abs(d.x));
    }
    if (!(max00 > 0.0))
        throw ValidationError("fit_coupling_model: eta00 data are all zero");

    FitReport rep;
    const double c2 = std::cos(opts.phi_x) * std::cos(opts.phi_x);

    if (max10 < 1e-9 * max00) {
        // no HG10 signal: eta10_0 and phi_x collapse to the phi_x = 90 deg family
        std::vector<double> xs, ys;
        for (const auto& d : data) {
            xs.push_back(d.x * d.x);
            ys.push_back(d.eta00 > 0.0 ? std::log(d.eta00) : -700.0);
        }
        LinearFit lf = linear_least_squares(xs, ys);
        const double w = lf.slope < 0.0 ? std::sqrt(-1.0 / lf.slope) : xmax;
        rep.names = {"waist_m", "phi_x_rad", "eta00_0", "eta10_0"};
        rep.parameters = {w, constants::pi / 2.0, std::exp(lf.intercept), 0.0};
        rep.converged = true;
        rep.iterations = 1;
        rep.flags = {"degenerate", "phix-family-unidentified"};
        return rep;
    }

    // peak of (x/w)^2 exp(-x^2/w^2) sits at x = w; its value is e^{-1} eta10_0 cos^2
    double w0 = x_at_max10 > 0.0 ? x_at_max10 : xmax / 2.0;
    const double e000 = std::min(max00 * 1.05, 1.0);
    const double c0 = std::min(max10 * std::exp(1.0), 1.0);

    auto objective = [&](const std::vector<double>& p) {
        const double w = std::exp(p[0]);
        const double a00 = std::exp(p[1]);
        const double a10 = std::exp(p[2]);  // eta10_0 cos^2(phi_x), fitted as one number
        double ssr = 0.0;
        for (const auto& d : data) {
            const double u = d.x * d.x / (w * w);
            const double m00 = a00 * std::exp(-u);
            const double m10 = a10 * u * std::exp(-u);
            ssr += (d.eta00 - m00) * (d.eta00 - m00) + (d.eta10 - m10) * (d.eta10 - m10);
        }
        return ssr;
    };

    std::vector<double> p0 = {std::log(w0), std::log(e000), std::log(c0)};
    SimplexResult res = nelder_mead(objective, p0, opts.simplex);
    if (!res.converged) throw FitError("fit_coupling_model: simplex did not converge");
    // polish pass: restart tight around the optimum so exact-model data land
    // at a machine-level residual
    SimplexOptions polish = opts.simplex;
    polish.initial_step = 1e-5;
    polish.relative_tolerance = 1e-13;
    res = nelder_mead(objective, res.x, polish);

    const double w = std::exp(res.x[0]);
    rep.names = {"waist_m", "phi_x_rad", "eta00_0", "eta10_0"};
    rep.parameters = {w, opts.phi_x, std::exp(res.x[1]), std::exp(res.x[2]) / c2};
    rep.residual_norm = std::sqrt(res.fmin);
    rep.iterations = res.evaluations;
    rep.converged = true;
    // eta10_0 and phi_x enter the model only through their product
    rep.flags.push_back("phix-eta10-degenerate");
    if (xmax < 1.05 * w) rep.flags.push_back("ill-conditioned");  // peak barely covered
    return rep;
}

// ---------------------------------------------------------------------------
// Peak-area toy model
// ---------------------------------------------------------------------------

std::vector<AreaScanRow> area_scan_model(double phi_rotation, const CouplingScan& torsion_scan,
                                         const CouplingScan& flexural_scan) {
    if (torsion_scan.rows.size() != flexural_scan.rows.size())
        throw ValidationError("area_scan_model: scans differ in length");
    const double c = std::cos(phi_rotation), s = std::sin(phi_rotation);

    std::vector<AreaScanRow> rows;
    rows.reserve(torsion_scan.rows.size());
    double peak = 0.0;
    for (std::size_t i = 0; i < torsion_scan.rows.size(); ++i) {
        const auto& tr = torsion_scan.rows[i];
        const auto& fr = flexural_scan.rows[i];
        if (tr.y0 != fr.y0)
            throw ValidationError("area_scan_model: scans sample different positions");
        AreaScanRow row;
        row.y0 = tr.y0;
        row.torsion = c * c * tr.beta10 * tr.beta10;
        row.flexural = s * s * fr.beta01 * fr.beta01;
        peak = std::max({peak, row.torsion, row.flexural});
        rows.push_back(row);
    }
    if (peak > 0.0) {
        for (auto& row : rows) {
            row.torsion /= peak;
            row.flexural /= peak;
        }
    }
    return rows;
}

}  // namespace spade
