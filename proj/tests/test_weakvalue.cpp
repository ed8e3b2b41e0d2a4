#include <michelson/weakvalue.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace michelson;

namespace {

const CoherentAmplitude pulse = GaussianPulse{1.0, 2.35e15, 0.05 * 2.35e15};
constexpr double tau = 2.5e-6 / speed_of_light;

}  // namespace

TEST(WeakValue, Examples) {
  EXPECT_NEAR(std::abs(weak_value(0.5 * std::numbers::pi) - complex(0.0, -1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(weak_value(std::numbers::pi)), 0.0, 1e-15);
  EXPECT_NEAR(weak_value(0.02).imag(), -1.0 / std::tan(0.01), 1e-10);
  EXPECT_EQ(weak_value(0.3).real(), 0.0);
  EXPECT_THROW(weak_value(0.0), DomainError);
  EXPECT_THROW(weak_value(2.0 * two_pi), DomainError);
}

TEST(WeakValueProperty, ModulusTimesTangentIsOne) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> th(1e-6, std::numbers::pi - 1e-3);
  for (int i = 0; i < 1000; ++i) {
    const double t = th(rng);
    EXPECT_NEAR(std::abs(weak_value(t)) * std::tan(0.5 * t), 1.0, 1e-12);
  }
}

TEST(WeakValue, PointerShiftFirstOrder) {
  const WeakSetup s{0.2, 1e-3, {0.0, 2.0}};
  EXPECT_NEAR(pointer_shift(s), 2.0 * 1e-3 * (-1.0 / std::tan(0.1)) * 4.0, 1e-15);
}

TEST(WeakValue, PointerShiftMatchesExactPostselectedMoment) {
  // |Φ(p)(1 − g cot(θ/2) p)|² has mean shift −2gσ²cot / (1 + (g σ cot)²) for μ = 0.
  for (double g : {1e-4, 1e-3, 1e-2, 5e-2}) {
    const WeakSetup s{0.3, g, {0.0, 1.5}};
    const double cot = 1.0 / std::tan(0.15);
    const double sig = s.pointer.sigma;
    const double exact = -2.0 * g * sig * sig * cot / (1.0 + g * g * sig * sig * cot * cot);
    EXPECT_NEAR(pointer_shift_numerical(s) / exact, 1.0, 1e-9) << g;
  }
}

TEST(WeakValue, PointerShiftConvergesInWeakLimit) {
  double previous = 1.0;
  for (double g : {1e-2, 1e-3, 1e-4}) {
    const WeakSetup s{0.2, g, {0.0, 1.0}};
    const double err = std::abs(pointer_shift_numerical(s) / pointer_shift(s) - 1.0);
    EXPECT_LT(err, previous);
    previous = err;
  }
  EXPECT_LT(previous, 1e-5);
}

TEST(WeakValue, ValidityWarning) {
  const auto ok = postselected_pointer({0.2, 1e-4, {0.0, 1.0}});
  EXPECT_TRUE(ok.warnings.empty());
  const auto strong = postselected_pointer({0.2, 0.1, {0.0, 1.0}});
  EXPECT_GT(strong.validity, 0.1);
  EXPECT_FALSE(strong.warnings.empty());
  EXPECT_THROW(postselected_pointer({0.2, 0.1, {0.0, 0.0}}), ConfigError);
}

TEST(Pulsed, MeanFrequencyOfSquareIsCentreAndThetaIndependent) {
  EXPECT_NEAR(mean_frequency_of_square(pulse, {}) / 2.35e15, 1.0, 1e-12);
  const auto a = photon_number_spectrum(pulse, 0.3, tau, 0.0, 1e-30);
  const auto b = photon_number_spectrum(pulse, 1.7, tau, 0.0, 1e-30);
  EXPECT_EQ(a.omega0_bar, b.omega0_bar);
}

TEST(Pulsed, UnperturbedSpectrum) {
  const auto p = photon_number_spectrum(pulse, 0.8, tau, 0.0, 0.0);
  const double s2 = std::pow(std::sin(0.4), 2);
  for (std::size_t i = 0; i < p.grid.size(); i += 97) {
    EXPECT_EQ(p.dn[i], 0.0);
    EXPECT_NEAR(p.n0[i], s2 * pulse(p.grid[i]) * pulse(p.grid[i]), 1e-15);
  }
  EXPECT_NEAR(direct_frequency_shift(p), 0.0, 1e-15 * p.omega0_bar);
}

TEST(Pulsed, ZeroOffsetSpectrumIsDark) {
  const auto p = photon_number_spectrum(pulse, 0.0, tau, 1e-30, 1e-30);
  for (std::size_t i = 0; i < p.grid.size(); i += 97) {
    EXPECT_EQ(p.n0[i], 0.0);
    EXPECT_EQ(p.dn[i], 0.0);
  }
}

TEST(Pulsed, NormalizedSpectrumIntegratesToOne) {
  const auto p = photon_number_spectrum(pulse, 0.5, tau, 2e-31, 1e-30);
  const auto w = p.grid.trapezoid_weights();
  double total = 0.0;
  for (std::size_t i = 0; i < p.grid.size(); ++i) total += w[i] * p.f[i];
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(Pulsed, ShiftIsLinearInMotion) {
  const double a = frequency_expectation_shift(pulse, 0.4, tau, 3e-31, 0.0);
  const double b = frequency_expectation_shift(pulse, 0.4, tau, 0.0, 1e-30);
  const double ab = frequency_expectation_shift(pulse, 0.4, tau, 3e-31, 1e-30);
  EXPECT_NEAR(ab, a + b, 1e-12 * (std::abs(a) + std::abs(b)));
  EXPECT_NEAR(frequency_expectation_shift(pulse, 0.4, tau, 0.0, 2e-30), 2.0 * b, 1e-12 * std::abs(b));
}

TEST(Pulsed, DifferentialTermVanishesAtHalfTurn) {
  const double w = frequency_expectation_shift(pulse, std::numbers::pi, tau, 0.0, 1e-30);
  const double c = frequency_expectation_shift(pulse, 0.4, tau, 0.0, 1e-30);
  EXPECT_LT(std::abs(w), 1e-14 * std::abs(c));
  EXPECT_NE(frequency_expectation_shift(pulse, std::numbers::pi, tau, 1e-30, 0.0), 0.0);
}

TEST(Pulsed, DifferentialShiftScalesWithCotangent) {
  const double a = frequency_expectation_shift(pulse, 0.01, tau, 0.0, 1e-32);
  const double b = frequency_expectation_shift(pulse, 0.02, tau, 0.0, 1e-32);
  EXPECT_NEAR(a / b, std::tan(0.01) / std::tan(0.005), 1e-12);
  EXPECT_NEAR(a / b, 2.0, 1e-4);
}

TEST(Pulsed, FormulaAgreesWithDirectIntegration) {
  for (double th : {0.05, 0.5, 2.0}) {
    const auto p = photon_number_spectrum(pulse, th, tau, 1e-31, 1e-31);
    const double direct = direct_frequency_shift(p);
    const double formula = frequency_expectation_shift(pulse, th, tau, 1e-31, 1e-31);
    EXPECT_LT(std::abs(formula - direct) / std::abs(direct), 1e-3) << th;
  }
}

TEST(Pulsed, FormulaDirectGapShrinksWithMotion) {
  double previous = 1.0;
  for (double z : {1e-28, 1e-29, 1e-30}) {
    const auto p = photon_number_spectrum(pulse, 0.3, tau, 0.0, z);
    const double direct = direct_frequency_shift(p);
    const double formula = frequency_expectation_shift(pulse, 0.3, tau, 0.0, z);
    const double gap = std::abs(formula - direct) / std::abs(direct);
    EXPECT_LT(gap, previous);
    previous = gap;
  }
}

TEST(Pulsed, LinearizationGuard) {
  EXPECT_THROW(photon_number_spectrum(pulse, 0.3, tau, 0.0, 1e-20), LinearizationError);
  try {
    photon_number_spectrum(pulse, 0.3, tau, 0.0, 1e-20);
  } catch (const LinearizationError& e) {
    EXPECT_GT(e.ratio(), 0.5);
  }
  EXPECT_THROW(photon_number_spectrum(Monochromatic{1.0, 2e15}, 0.3, tau, 0.0, 1e-30), DomainError);
  EXPECT_THROW(frequency_expectation_shift(pulse, 0.0, tau, 0.0, 1e-30), DomainError);
}
