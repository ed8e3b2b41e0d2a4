// Prints S_h / h_SQL² across the audio band for a few phase offsets.

#include <michelson/conventional.hpp>

#include <cmath>
#include <cstdio>

int main() {
  using namespace michelson;
  InterferometerConfig cfg;
  cfg.arm_length_m = tune_arm_length(cfg.arm_length_m, cfg.omega0);

  const double offsets[] = {0.0, 0.5, 1.0};
  std::printf("%10s %12s", "f [Hz]", "kappa");
  for (double th : offsets) std::printf("   theta=%-5.2f", th);
  std::printf("\n");
  for (int i = 0; i <= 24; ++i) {
    const double f = 10.0 * std::pow(10.0, 3.0 * i / 24.0);
    const double W = two_pi * f;
    std::printf("%10.2f %12.4e", f, kappa(cfg, W));
    for (double th : offsets) {
      cfg.theta = th;
      const auto t = two_photon(sideband_io(cfg, W), cfg);
      std::printf("   %11.5f", noise_spectrum(t) / (t.h_sql * t.h_sql));
    }
    std::printf("\n");
  }
}
