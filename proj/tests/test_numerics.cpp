#include <michelson/amplitude.hpp>
#include <michelson/convolution.hpp>
#include <michelson/moments.hpp>
#include <michelson/quadrature.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

using namespace michelson;
using namespace michelson::numerics;

namespace {

// Composite trapezoid, halving the step until three successive estimates agree.
template <class F>
double trapezoid_refined(F f, double a, double b, double tol) {
  std::size_t n = 64;
  auto trap = [&](std::size_t m) {
    const double h = (b - a) / static_cast<double>(m);
    double s = 0.5 * (f(a) + f(b));
    for (std::size_t i = 1; i < m; ++i) s += f(a + h * static_cast<double>(i));
    return s * h;
  };
  double prev = trap(n);
  int agreements = 0;
  while (agreements < 3) {
    n *= 2;
    const double cur = trap(n);
    agreements = std::abs(cur - prev) <= tol * std::abs(cur) ? agreements + 1 : 0;
    prev = cur;
    if (n > (1u << 24)) break;
  }
  return prev;
}

double gauss_x32(double x) { return std::pow(x, 1.5) * std::exp(-0.5 * (x - 5.0) * (x - 5.0)); }

}  // namespace

TEST(FrequencyGrid, RejectsInvalidPoints) {
  EXPECT_THROW(FrequencyGrid({}, GridKind::optical), GridError);
  EXPECT_THROW(FrequencyGrid({1.0, 1.0}, GridKind::optical), GridError);
  EXPECT_THROW(FrequencyGrid({-1.0, 1.0}, GridKind::optical), GridError);
  EXPECT_THROW(FrequencyGrid({0.0, NAN}, GridKind::sideband), GridError);
  EXPECT_NO_THROW(FrequencyGrid({-1.0, 1.0}, GridKind::sideband));
}

TEST(FrequencyGrid, CenteredIsUniformAndSymmetric) {
  const auto g = FrequencyGrid::centered(0.5, 4);
  ASSERT_EQ(g.size(), 9u);
  EXPECT_EQ(g[4], 0.0);
  EXPECT_EQ(g.front(), -g.back());
  ASSERT_TRUE(g.uniform_step().has_value());
  EXPECT_DOUBLE_EQ(*g.uniform_step(), 0.5);
  EXPECT_EQ(g.index_of(1.0), std::optional<std::size_t>(6));
  EXPECT_FALSE(g.index_of(0.7).has_value());
}

TEST(Quadrature, GaussianHalfLine) {
  auto f = [](double x) { return std::exp(-x * x); };
  const auto r = integrate_semi_infinite(f, Weight::none, 0.0);
  EXPECT_NEAR(r.value, std::sqrt(std::numbers::pi) / 2.0, 1e-12);
  EXPECT_LE(r.relative_error(), 1e-9);
}

TEST(Quadrature, SineWeightVanishesAtZeroDelay) {
  SemiInfiniteOptions o;
  o.upper = 17.0;
  const auto r = integrate_semi_infinite(gauss_x32, Weight::sine, 0.0, o);
  EXPECT_EQ(r.value, 0.0);
  EXPECT_EQ(r.abs_error, 0.0);
}

TEST(Quadrature, OscillatoryMatchesRefinementOracle) {
  SemiInfiniteOptions o;
  o.upper = 5.0 + 12.0;
  const auto r = integrate_semi_infinite(gauss_x32, Weight::sine, 1.0, o);
  const double oracle = trapezoid_refined(
      [](double x) { return gauss_x32(x) * std::sin(x); }, 0.0, 17.0, 1e-12);
  EXPECT_NEAR(r.value, oracle, 1e-9 * std::abs(oracle));
  // High-precision reference computed once offline.
  EXPECT_NEAR(r.value, -14.856861299354239988, 1e-9 * 14.86);
}

TEST(Quadrature, CutoffDoublingInvariance) {
  SemiInfiniteOptions o;
  o.upper = 17.0;
  const double a = integrate_semi_infinite(gauss_x32, Weight::sine, 1.0, o).value;
  o.upper = 34.0;
  const double b = integrate_semi_infinite(gauss_x32, Weight::sine, 1.0, o).value;
  EXPECT_NEAR(a, b, 1e-9 * std::abs(a));
}

TEST(Quadrature, Linearity) {
  auto g = [](double x) { return std::exp(-x) * x; };
  SemiInfiniteOptions o;
  o.upper = 60.0;
  const double fa = integrate_semi_infinite(gauss_x32, Weight::cosine, 2.0, o).value;
  const double ga = integrate_semi_infinite(g, Weight::cosine, 2.0, o).value;
  auto combo = [&](double x) { return 3.0 * gauss_x32(x) - 0.5 * g(x); };
  const double ca = integrate_semi_infinite(combo, Weight::cosine, 2.0, o).value;
  EXPECT_NEAR(ca, 3.0 * fa - 0.5 * ga, 2e-9 * (3.0 * std::abs(fa) + 0.5 * std::abs(ga)));
}

TEST(Quadrature, ManyPeriodsAreSplitAtZeros) {
  SemiInfiniteOptions o;
  o.upper = 17.0;
  const auto r = integrate_semi_infinite(gauss_x32, Weight::sine, 200.0, o);
  const double oracle = trapezoid_refined(
      [](double x) { return gauss_x32(x) * std::sin(200.0 * x); }, 0.0, 17.0, 1e-11);
  EXPECT_NEAR(r.value, oracle, 1e-8 * std::abs(gauss_x32(5.0)));
  EXPECT_GT(r.panels, 1000u);
}

TEST(Quadrature, BudgetExhaustionCarriesBestEstimate) {
  QuadratureOptions o;
  o.max_panels = 3;
  o.rel_tol = 1e-14;
  auto f = [](double x) { return std::sin(1.0 / (x + 1e-3)); };
  try {
    integrate_adaptive(f, 0.0, 1.0, o);
    FAIL() << "expected QuadratureError";
  } catch (const QuadratureError& e) {
    EXPECT_EQ(e.best().panels, 3u);
    EXPECT_GT(e.best().abs_error, 0.0);
  }
}

TEST(Quadrature, ReversedLimitsFlipSign) {
  auto f = [](double x) { return x * x; };
  EXPECT_NEAR(integrate_adaptive(f, 1.0, 0.0).value, -1.0 / 3.0, 1e-15);
}

TEST(Quadrature, UnboundedOscillatoryIsRejected) {
  EXPECT_THROW(integrate_semi_infinite(gauss_x32, Weight::cosine, 1.0), DomainError);
}

TEST(Moments, SineMomentsVanishAtZeroDelay) {
  const CoherentAmplitude a = GaussianPulse{1.0, 10.0, 1.0};
  const auto m = moment_integrals(a, 0.0);
  EXPECT_EQ(m.Is_minus, 0.0);
  EXPECT_EQ(m.Is_plus, 0.0);
  EXPECT_EQ(m.Is_3_2, 0.0);
  EXPECT_GT(m.Ic_minus, 0.0);
}

TEST(Moments, HomogeneityOfJ) {
  const CoherentAmplitude a = GaussianPulse{1.0, 10.0, 1.0};
  const double j1 = moment_integrals(a, 0.3).J;
  const double j3 = moment_integrals(a.scaled(3.0), 0.3).J;
  EXPECT_NEAR(j3, 9.0 * j1, 1e-12 * j3);
  // ∫ exp(−u²/σ²) = σ√π
  EXPECT_NEAR(j1, std::sqrt(std::numbers::pi), 1e-9);
}

TEST(Moments, ParityInDelay) {
  const CoherentAmplitude a = GaussianPulse{1.0, 10.0, 1.5};
  const auto p = moment_integrals(a, 0.7);
  const auto n = moment_integrals(a, -0.7);
  EXPECT_NEAR(n.Is_3_2, -p.Is_3_2, 1e-12 * std::abs(p.Is_3_2));
  EXPECT_NEAR(n.Is_plus, -p.Is_plus, 1e-12 * std::abs(p.Is_plus));
  EXPECT_NEAR(n.Ic_minus, p.Ic_minus, 1e-12 * std::abs(p.Ic_minus));
  EXPECT_NEAR(n.Ic_plus, p.Ic_plus, 1e-12 * std::abs(p.Ic_plus));
}

TEST(Moments, NarrowWidthLimit) {
  const double w0 = 1.0;
  const double tau = 0.4;
  double previous = 1.0;
  for (double rel : {1e-2, 1e-3}) {
    const CoherentAmplitude a = GaussianPulse{1.0, w0, rel * w0};
    const auto m = moment_integrals(a, tau);
    const double area = rel * w0 * std::sqrt(2.0 * std::numbers::pi);
    const double limit = std::cos(w0 * tau) * area / std::sqrt(w0);
    const double err = std::abs(m.Ic_minus - limit) / std::abs(limit);
    EXPECT_LT(err, 10.0 * rel * rel);
    EXPECT_LT(err, previous);
    previous = err;
  }
}

TEST(Moments, StableUnderCutoffAndRuleDoubling) {
  const CoherentAmplitude a = GaussianPulse{1.0, 20.0, 1.0};
  const auto base = moment_integrals(a, 1.0);
  MomentOptions wide;
  wide.cutoff_widths = 24.0;
  const auto w = moment_integrals(a, 1.0, wide);
  MomentOptions dense;
  dense.rule = Rule::gk31;
  const auto d = moment_integrals(a, 1.0, dense);
  for (auto member : {&MomentIntegrals::J, &MomentIntegrals::Ic_minus, &MomentIntegrals::Ic_plus,
                      &MomentIntegrals::Is_minus, &MomentIntegrals::Is_plus, &MomentIntegrals::Is_3_2}) {
    const double ref = base.*member;
    EXPECT_NEAR(w.*member, ref, 1e-8 * std::abs(ref));
    EXPECT_NEAR(d.*member, ref, 1e-8 * std::abs(ref));
  }
}

TEST(Moments, MonochromaticIsRejected) {
  const CoherentAmplitude a = Monochromatic{1.0, 1.0};
  EXPECT_THROW(moment_integrals(a, 1.0), DomainError);
}

TEST(Convolution, ZeroInZeroOut) {
  const auto g = FrequencyGrid::centered(0.1, 20);
  GriddedFunction z(g, std::vector<complex>(g.size()));
  const auto h = convolve_on_grid(z, z);
  for (auto v : h.values) EXPECT_EQ(v, complex{});
}

TEST(Convolution, DeltaIsIdentity) {
  const auto g = FrequencyGrid::centered(0.1, 20);
  std::vector<complex> f(g.size()), d(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) f[i] = complex(std::cos(g[i]), g[i]);
  d[20] = two_pi / 0.1;
  const auto h = convolve_on_grid(GriddedFunction(g, d), GriddedFunction(g, f));
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(std::abs(h.values[i] - f[i]), 0.0, 1e-14);
}

TEST(Convolution, BoxesMakeTriangle) {
  const double step = 0.01;
  const auto g = FrequencyGrid::centered(step, 400);
  std::vector<complex> box(g.size());
  const double half = 1.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (std::abs(g[i]) <= half + 1e-12) box[i] = 2.0;
  const GriddedFunction b(g, box);
  const auto h = convolve_on_grid(b, b);
  // Peak: width · amplitude product / 2π, up to the sampled box edges.
  const double peak = 2.0 * half * 4.0 / two_pi;
  EXPECT_NEAR(h.values[400].real(), peak, 8.0 * step / two_pi);
  // Halfway down the ramp.
  EXPECT_NEAR(h.values[500].real(), peak / 2.0, 8.0 * step / two_pi);
  EXPECT_NEAR(std::abs(h.values[800]), 0.0, 1e-12);
}

TEST(Convolution, MismatchedGridsThrow) {
  const auto a = FrequencyGrid::centered(0.1, 10);
  const auto b = FrequencyGrid::centered(0.2, 10);
  GriddedFunction fa(a, std::vector<complex>(a.size()));
  GriddedFunction fb(b, std::vector<complex>(b.size()));
  EXPECT_THROW(convolve_on_grid(fa, fb), GridError);
  const auto shifted = FrequencyGrid::linear(0.05, 1.05, 11, GridKind::sideband);
  GriddedFunction fs(shifted, std::vector<complex>(shifted.size()));
  EXPECT_THROW(convolve_on_grid(fa, fs), GridError);
}
