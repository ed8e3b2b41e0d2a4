#pragma once

#include <michelson/constants.hpp>
#include <michelson/errors.hpp>

#include <cmath>

namespace michelson {

/// Physical parameters of the Michelson interferometer (SI units).
struct InterferometerConfig {
  double mass_kg = 40.0;          // end mirrors and beam splitter share one mass
  double arm_length_m = 4000.0;
  double theta = 0.0;             // differential phase offset, rad
  double power_w = 1e8;           // carrier power I0
  double omega0 = 1.77e15;        // carrier angular frequency
  double beam_area_m2 = 1e-4;

  double tau() const { return arm_length_m / speed_of_light; }

  void validate() const {
    auto positive = [](double v, const char* field) {
      if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(field, "must be positive and finite");
    };
    positive(mass_kg, "interferometer.mass_kg");
    positive(arm_length_m, "interferometer.arm_length_m");
    positive(power_w, "interferometer.power_w");
    positive(omega0, "interferometer.omega0_rad_s");
    positive(beam_area_m2, "interferometer.beam_area_m2");
    if (!std::isfinite(theta)) throw ConfigError("interferometer.theta_rad", "must be finite");
  }
};

}  // namespace michelson
