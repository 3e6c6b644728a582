#pragma once

#include <functional>
#include <string>
#include <vector>

namespace spade {

// Outcome of a least-squares fit. Uncertainties come from a residual
// bootstrap when requested by the specific fitter, otherwise stay empty.
struct FitReport {
    std::vector<std::string> names;
    std::vector<double> parameters;
    std::vector<double> uncertainties;
    double residual_norm = 0.0;  // sqrt(SSR)
    int iterations = 0;
    bool converged = false;
    std::vector<std::string> flags;

    double value(const std::string& name) const;       // throws if absent
    double uncertainty(const std::string& name) const;
    bool has_flag(const std::string& flag) const;
};

struct SimplexOptions {
    double relative_tolerance = 1e-9;  // simplex diameter, relative
    int max_evaluations = 10000;
    double initial_step = 0.05;        // relative; absolute fallback for zeros
};

struct SimplexResult {
    std::vector<double> x;
    double fmin = 0.0;
    int evaluations = 0;
    bool converged = false;
};

// Nelder-Mead downhill simplex with standard coefficients. Deterministic for
// identical inputs; stops on relative simplex diameter or evaluation budget.
SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                          const std::vector<double>& x0, const SimplexOptions& opts = {});

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double ssr = 0.0;
};

LinearFit linear_least_squares(const std::vector<double>& x, const std::vector<double>& y);

struct QuadraticFit {
    double c0 = 0.0, c1 = 0.0, c2 = 0.0;  // c0 + c1 x + c2 x^2
    double ssr = 0.0;
};

QuadraticFit quadratic_least_squares(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace spade
