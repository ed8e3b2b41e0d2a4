// Mean-frequency shift of a post-selected Gaussian pulse against the offset θ.

#include <michelson/weakvalue.hpp>

#include <cmath>
#include <cstdio>

int main() {
  using namespace michelson;
  const CoherentAmplitude pulse = GaussianPulse{1.0, 2.35e15, 0.05 * 2.35e15};
  const double tau = 2.5e-6 / speed_of_light;
  const double z_diff = 1e-30;

  std::printf("%10s %14s %16s %16s %12s\n", "theta", "Im A_w", "formula", "direct", "rel diff");
  for (int i = 0; i <= 12; ++i) {
    const double th = 1e-3 * std::pow(10.0, 3.0 * i / 12.0);
    const auto p = photon_number_spectrum(pulse, th, tau, 0.0, z_diff);
    const double formula = frequency_expectation_shift(pulse, th, tau, 0.0, z_diff);
    const double direct = direct_frequency_shift(p);
    std::printf("%10.4g %14.6g %16.8g %16.8g %12.3e\n", th, weak_value(th).imag(), formula, direct,
                std::abs(formula - direct) / std::abs(direct));
  }
}
