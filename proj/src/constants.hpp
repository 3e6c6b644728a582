#pragma once

// Fixed CODATA values; everything downstream is SI.
namespace spade::constants {

inline constexpr double hbar = 1.054571817e-34;  // J s
inline constexpr double h = 6.62607015e-34;      // J s
inline constexpr double c = 2.99792458e8;        // m/s
inline constexpr double k_B = 1.380649e-23;      // J/K
inline constexpr double pi = 3.14159265358979323846;

}  // namespace spade::constants
