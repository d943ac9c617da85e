#pragma once

#include <numbers>

namespace pprad::constants {

// CODATA 2018 exact / recommended values, SI units.
inline constexpr double hbar = 1.054571817e-34;  // J s
inline constexpr double k_B = 1.380649e-23;      // J / K
inline constexpr double c = 2.99792458e8;        // m / s
inline constexpr double pi = std::numbers::pi;

inline constexpr const char* table_version = "CODATA-2018";

}  // namespace pprad::constants
