#pragma once

#include <cstdint>
#include <random>

namespace spade {

// Deterministic variate source. mt19937_64 has a portable bit stream; the
// transforms below are written out so sequences are identical across standard
// libraries (std::<random> distributions are implementation-defined, which
// would break the byte-identical-CSV contract).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform();   // [0, 1)
    double normal();    // standard normal, Box-Muller
    // Gamma(shape, scale) via Marsaglia-Tsang squeeze, shape >= 1.
    double gamma(double shape, double scale);
    // chi^2_{2n}/(2n) multiplier of an n-average periodogram bin.
    double periodogram_factor(int n_avg);

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace spade
