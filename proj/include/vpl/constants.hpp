#pragma once

#include <numbers>

namespace vpl::constants {

inline constexpr double pi = std::numbers::pi;

// CODATA 2018 exact / recommended values, SI units.
inline constexpr double speed_of_light = 2.99792458e8;     // m/s
inline constexpr double reduced_planck = 1.054571817e-34;  // J s

}  // namespace vpl::constants
