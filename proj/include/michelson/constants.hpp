#pragma once

#include <numbers>

namespace michelson {

// SI units throughout.
inline constexpr double speed_of_light = 299792458.0;    // m/s
inline constexpr double hbar = 1.054571817e-34;          // J s
inline constexpr double two_pi = 2.0 * std::numbers::pi;

}  // namespace michelson
