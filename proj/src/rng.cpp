#include "rng.hpp"

#include <cmath>

#include "constants.hpp"
#include "errors.hpp"

namespace spade {

double Rng::uniform() {
    // 53 random bits into [0, 1)
    return (engine_() >> 11) * (1.0 / 9007199254740992.0);
}

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = 0.0;
    do {
        u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * constants::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

double Rng::gamma(double shape, double scale) {
    if (!(shape >= 1.0) || !(scale > 0.0))
        throw ValidationError("Rng::gamma: shape must be >= 1 and scale positive");
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x = 0.0, v = 0.0;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return scale * d * v;
        if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return scale * d * v;
    }
}

double Rng::periodogram_factor(int n_avg) {
    if (n_avg < 1) throw ValidationError("periodogram_factor: n_avg must be >= 1");
    // chi^2 with 2 n_avg dof, divided by 2 n_avg == Gamma(n_avg, 1/n_avg)
    return gamma(static_cast<double>(n_avg), 1.0 / n_avg);
}

}  // namespace spade
