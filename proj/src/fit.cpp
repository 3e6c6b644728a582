#include "fit.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace spade {

double FitReport::value(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return parameters[i];
    throw ValidationError("FitReport: no parameter named '" + name + "'");
}

double FitReport::uncertainty(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return i < uncertainties.size() ? uncertainties[i] : 0.0;
    throw ValidationError("FitReport: no parameter named '" + name + "'");
}

bool FitReport::has_flag(const std::string& flag) const {
    return std::find(flags.begin(), flags.end(), flag) != flags.end();
}

SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                          const std::vector<double>& x0, const SimplexOptions& opts) {
    const std::size_t n = x0.size();
    if (n == 0) throw ValidationError("nelder_mead: empty parameter vector");

    int evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        double v = f(x);
        return std::isfinite(v) ? v : 1e300;
    };

    // initial simplex: x0 plus one perturbed vertex per dimension
    std::vector<std::vector<double>> simplex(n + 1, x0);
    std::vector<double> fv(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        double step = opts.initial_step * std::abs(x0[i]);
        if (step == 0.0) step = opts.initial_step;
        simplex[i + 1][i] += step;
    }
    for (std::size_t i = 0; i <= n; ++i) fv[i] = eval(simplex[i]);

    auto order = [&]() {
        std::vector<std::size_t> idx(n + 1);
        for (std::size_t i = 0; i <= n; ++i) idx[i] = i;
        std::stable_sort(idx.begin(), idx.end(),
                         [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        std::vector<std::vector<double>> s2(n + 1);
        std::vector<double> f2(n + 1);
        for (std::size_t i = 0; i <= n; ++i) {
            s2[i] = simplex[idx[i]];
            f2[i] = fv[idx[i]];
        }
        simplex.swap(s2);
        fv.swap(f2);
    };

    auto diameter = [&]() {
        double d = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double lo = simplex[0][i], hi = simplex[0][i];
            for (std::size_t v = 1; v <= n; ++v) {
                lo = std::min(lo, simplex[v][i]);
                hi = std::max(hi, simplex[v][i]);
            }
            d = std::max(d, hi - lo);
            scale = std::max(scale, std::abs(simplex[0][i]));
        }
        return d / std::max(scale, 1.0);
    };

    bool converged = false;
    while (evals < opts.max_evaluations) {
        order();
        if (diameter() < opts.relative_tolerance) {
            converged = true;
            break;
        }

        // centroid of all but the worst vertex
        std::vector<double> centroid(n, 0.0);
        for (std::size_t v = 0; v < n; ++v)
            for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[v][i] / n;

        auto blend = [&](double t) {
            std::vector<double> x(n);
            for (std::size_t i = 0; i < n; ++i) x[i] = centroid[i] + t * (simplex[n][i] - centroid[i]);
            return x;
        };

        std::vector<double> xr = blend(-1.0);  // reflection
        double fr = eval(xr);
        if (fr < fv[0]) {
            std::vector<double> xe = blend(-2.0);  // expansion
            double fe = eval(xe);
            if (fe < fr) {
                simplex[n] = xe;
                fv[n] = fe;
            } else {
                simplex[n] = xr;
                fv[n] = fr;
            }
        } else if (fr < fv[n - 1]) {
            simplex[n] = xr;
            fv[n] = fr;
        } else {
            std::vector<double> xc = blend(fr < fv[n] ? -0.5 : 0.5);  // contraction
            double fc = eval(xc);
            if (fc < std::min(fr, fv[n])) {
                simplex[n] = xc;
                fv[n] = fc;
            } else {
                // shrink towards the best vertex
                for (std::size_t v = 1; v <= n; ++v) {
                    for (std::size_t i = 0; i < n; ++i)
                        simplex[v][i] = simplex[0][i] + 0.5 * (simplex[v][i] - simplex[0][i]);
                    fv[v] = eval(simplex[v]);
                }
            }
        }
    }

    order();
    return {simplex[0], fv[0], evals, converged};
}

LinearFit linear_least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw ValidationError("linear_least_squares: need >= 2 paired points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double det = n * sxx - sx * sx;
    if (det == 0.0) throw ValidationError("linear_least_squares: degenerate abscissae");
    LinearFit fit;
    fit.slope = (n * sxy - sx * sy) / det;
    fit.intercept = (sy - fit.slope * sx) / n;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - fit.slope * x[i] - fit.intercept;
        fit.ssr += r * r;
    }
    return fit;
}

QuadraticFit quadratic_least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 3)
        throw ValidationError("quadratic_least_squares: need >= 3 paired points");

    // center and scale the abscissa for conditioning
    double mu = 0.0, span = 0.0;
    for (double v : x) mu += v;
    mu /= x.size();
    for (double v : x) span = std::max(span, std::abs(v - mu));
    if (span == 0.0) throw ValidationError("quadratic_least_squares: degenerate abscissae");

    double s[5] = {0, 0, 0, 0, 0};
    double t[3] = {0, 0, 0};
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double u = (x[i] - mu) / span;
        double p = 1.0;
        for (int k = 0; k < 5; ++k) {
            s[k] += p;
            if (k < 3) t[k] += p * y[i];
            p *= u;
        }
    }
    // normal equations, 3x3 Cramer
    const double a11 = s[0], a12 = s[1], a13 = s[2];
    const double a22 = s[2], a23 = s[3], a33 = s[4];
    const double det = a11 * (a22 * a33 - a23 * a23) - a12 * (a12 * a33 - a23 * a13) +
                       a13 * (a12 * a23 - a22 * a13);
    if (det == 0.0) throw ValidationError("quadratic_least_squares: singular normal equations");
    const double b0 = (t[0] * (a22 * a33 - a23 * a23) - a12 * (t[1] * a33 - a23 * t[2]) +
                       a13 * (t[1] * a23 - a22 * t[2])) / det;
    const double b1 = (a11 * (t[1] * a33 - t[2] * a23) - t[0] * (a12 * a33 - a23 * a13) +
                       a13 * (a12 * t[2] - t[1] * a13)) / det;
    const double b2 = (a11 * (a22 * t[2] - a23 * t[1]) - a12 * (a12 * t[2] - t[1] * a13) +
                       t[0] * (a12 * a23 - a22 * a13)) / det;

    // back to raw coordinates: y = b0 + b1 u + b2 u^2, u = (x - mu)/span
    QuadraticFit fit;
    fit.c2 = b2 / (span * span);
    fit.c1 = b1 / span - 2.0 * b2 * mu / (span * span);
    fit.c0 = b0 - b1 * mu / span + b2 * mu * mu / (span * span);
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.c0 + fit.c1 * x[i] + fit.c2 * x[i] * x[i]);
        fit.ssr += r * r;
    }
    return fit;
}

}  // namespace spade
