#include <michelson/fields.hpp>
#include <michelson/validation.hpp>
#include <michelson/weakvalue.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace michelson;

namespace {

FrequencyGrid symmetric_grid(int half, double step) {
  std::vector<double> p;
  for (int k = -half; k <= half; ++k)
    if (k != 0) p.push_back(step * k);
  return FrequencyGrid(p, GridKind::sideband);
}

FrequencyGrid optical_grid() { return FrequencyGrid::linear(1e15, 3e15, 41, GridKind::optical); }

}  // namespace

TEST(Fields, GridRejectsZeroFrequency) {
  EXPECT_THROW(QuadratureField(FrequencyGrid::linear(-1.0, 1.0, 3, GridKind::sideband)), GridError);
}

TEST(Fields, BeamSplitterOfZeroIsZero) {
  const auto g = optical_grid();
  const auto [Cx, Cy] = beam_splitter_in(QuadratureField::zero(g), QuadratureField::zero(g));
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_EQ(Cx.a[i], complex{});
    EXPECT_EQ(Cy.classical[i], complex{});
  }
}

TEST(Fields, ClassicalInputSplitsEvenly) {
  const auto g = optical_grid();
  const CoherentAmplitude alpha = GaussianPulse{1.0, 2e15, 1e14};
  const auto D = displace_coherent(alpha, g).classical;
  const auto [Cx, Cy] = beam_splitter_in(D, QuadratureField::zero(g));
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_NEAR(std::abs(Cx.classical[i] - alpha(g[i]) / std::sqrt(2.0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(Cy.classical[i] - alpha(g[i]) / std::sqrt(2.0)), 0.0, 1e-15);
  }
}

TEST(Fields, VacuumInputHasNoClassicalPart) {
  const auto g = optical_grid();
  const auto in = displace_coherent(GaussianPulse{1.0, 2e15, 1e14}, g);
  for (auto c : in.vacuum.classical) EXPECT_EQ(c, complex{});
  for (auto d : in.vacuum.d) EXPECT_EQ(d, complex{1.0});
}

TEST(Fields, OutputJunctionInterference) {
  const auto g = optical_grid();
  auto F = QuadratureField::vacuum_a(g);
  F.classical.assign(g.size(), complex{0.3, -0.2});
  const auto same = beam_splitter_out(F, F);
  const auto minusF = combine(-1.0, F, 0.0, F);
  const auto opposite = beam_splitter_out(minusF, F);
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_EQ(same.a[i], complex{});
    EXPECT_NEAR(std::abs(opposite.a[i] - std::sqrt(2.0) * F.a[i]), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(opposite.classical[i] - std::sqrt(2.0) * F.classical[i]), 0.0, 1e-15);
  }
}

TEST(Fields, JunctionCompositionRoutesVacuumToOutput) {
  const auto g = optical_grid();
  const auto D = QuadratureField::vacuum_d(g);
  const auto A = QuadratureField::vacuum_a(g);
  const auto [Cx, Cy] = beam_splitter_in(D, A);
  const auto B = beam_splitter_out(Cx, Cy);
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_NEAR(std::abs(B.a[i] - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(B.d[i]), 0.0, 1e-15);
  }
}

TEST(Fields, ArmPropagationIsPurePhaseWithoutMotion) {
  const auto g = symmetric_grid(5, 3e14);
  const double tau = 1e-14;
  const auto C = QuadratureField::vacuum_a(g);
  for (double theta : {0.0, 0.7}) {
    const auto x = arm_propagate(C, tau, Arm::x, theta, MirrorMotion{});
    const auto y = arm_propagate(C, tau, Arm::y, theta, MirrorMotion{});
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double w = g[i];
      const double sgn = w > 0 ? 1.0 : -1.0;
      EXPECT_NEAR(std::abs(x.a[i] - std::polar(1.0, 2 * w * tau - 0.5 * sgn * theta)), 0.0, 1e-14);
      EXPECT_NEAR(std::abs(y.a[i] - std::polar(1.0, 2 * w * tau + 0.5 * sgn * theta)), 0.0, 1e-14);
    }
  }
}

TEST(Fields, StaticDisplacementShiftsPhaseToFirstOrder) {
  const auto g = optical_grid();
  const double tau = 1e-14;
  const double z = 1e-12;
  const auto C = QuadratureField::vacuum_a(g);
  const auto moved = arm_propagate(C, tau, Arm::x, 0.0, MirrorMotion::constant(z));
  for (std::size_t i = 0; i < g.size(); ++i) {
    const complex expected = std::polar(1.0, 2 * g[i] * tau) * complex(1.0, 2 * g[i] * z / speed_of_light);
    EXPECT_NEAR(std::abs(moved.a[i] - expected), 0.0, 1e-14);
  }
}

TEST(Fields, ThetaZeroDarkPortPassesOnlyAntisymmetricVacuum) {
  InterferometerConfig cfg;
  cfg.theta = 0.0;
  const auto g = optical_grid();
  const auto B = assemble_io(cfg, GaussianPulse{1.0, 2e15, 1e14}, MirrorMotionSpec{}, g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_NEAR(std::abs(B.a[i] - std::polar(1.0, 2 * g[i] * cfg.tau())), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(B.a[i]), 1.0, 1e-14);
    EXPECT_NEAR(std::abs(B.d[i]), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(B.classical[i]), 0.0, 1e-15);
  }
}

TEST(Fields, MotionRealityDefect) {
  const auto g = symmetric_grid(4, 1.0);
  std::vector<complex> v;
  for (std::size_t i = 0; i < g.size(); ++i) v.push_back({g[i] * g[i], g[i]});
  MirrorMotion z;
  z.sampled.emplace(g, v);
  EXPECT_EQ(z.reality_defect(), 0.0);
  v[0] += 1.0;
  z.sampled.emplace(g, v);
  EXPECT_GT(z.reality_defect(), 0.5);
}

TEST(Fields, SampledMotionMatchesFlatMotionWhenConstant) {
  // A sampled Z equal to a constant over the α-difference band reproduces the flat-Z result.
  const auto g = FrequencyGrid::linear(1.4e15, 2.6e15, 121, GridKind::optical);
  const double tau = 8e-15;
  const CoherentAmplitude alpha = GaussianPulse{1.0, 2e15, 5e13};
  auto C = displace_coherent(alpha, g).classical;
  const auto zg = FrequencyGrid::centered(1e13, 500);
  const complex z0{2e-30, 0.0};
  MirrorMotion sampled;
  sampled.sampled.emplace(zg, std::vector<complex>(zg.size(), z0));
  const auto a = arm_propagate(C, tau, Arm::x, 0.3, MirrorMotion::flat(z0), MotionScope::classical_only);
  const auto b = arm_propagate(C, tau, Arm::x, 0.3, sampled, MotionScope::classical_only);
  double scale = 0.0, worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const complex da = a.classical[i] - std::polar(1.0, 2 * g[i] * tau - 0.15) * C.classical[i];
    const complex db = b.classical[i] - std::polar(1.0, 2 * g[i] * tau - 0.15) * C.classical[i];
    scale = std::max(scale, std::abs(da));
    worst = std::max(worst, std::abs(da - db));
  }
  ASSERT_GT(scale, 0.0);
  EXPECT_LT(worst / scale, 1e-3);
}

TEST(Fields, PhotonNumberFromOutputFieldMatchesSpectrumFormula) {
  // |B_c(ω)|² from the optical train against n̄₀ + δn.
  InterferometerConfig cfg;
  cfg.arm_length_m = 2.5e-6;
  cfg.theta = 0.4;
  const CoherentAmplitude alpha = GaussianPulse{1.0, 2.35e15, 0.05 * 2.35e15};
  const auto [lo, hi] = alpha.support(12.0);
  const auto g = FrequencyGrid::linear(lo, hi, 4001, GridKind::optical);
  MirrorMotionSpec motion;
  const double zc = 3e-30, zd = 1e-29;
  motion.com = MirrorMotion::flat(zc);
  motion.diff = MirrorMotion::flat(zd);
  const auto B = assemble_io(cfg, alpha, motion, g);
  const auto p = photon_number_spectrum(alpha, cfg.theta, cfg.tau(), zc, zd);
  double worst = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double w = g[i];
    if (alpha(w) < 1e-3) continue;
    const double dn_field = std::norm(B.classical[i]) - p.n0_at(w);
    scale = std::max(scale, std::abs(p.dn_at(w)));
    worst = std::max(worst, std::abs(dn_field - p.dn_at(w)));
  }
  ASSERT_GT(scale, 0.0);
  EXPECT_LT(worst / scale, 1e-6);
}

TEST(FieldsProperty, JunctionUnitarityAndHermiticityOnRandomFields) {
  std::mt19937_64 rng(7);
  const auto g = symmetric_grid(6, 2e14);
  double worst = 0.0;
  for (int c = 0; c < 1000; ++c) {
    const auto D = validation::random_hermitian_field(g, rng);
    const auto A = validation::random_hermitian_field(g, rng);
    const auto [Cx, Cy] = beam_splitter_in(D, A);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double in = std::norm(D.a[i]) + std::norm(A.a[i]) + std::norm(D.classical[i]) + std::norm(A.classical[i]);
      const double out =
          std::norm(Cx.a[i]) + std::norm(Cy.a[i]) + std::norm(Cx.classical[i]) + std::norm(Cy.classical[i]);
      worst = std::max(worst, std::abs(in - out) / in);
    }
    const auto Cxp = arm_propagate(Cx, 1e-14, Arm::x, 0.3, MirrorMotion{});
    const auto Cyp = arm_propagate(Cy, 1e-14, Arm::y, 0.3, MirrorMotion{});
    worst = std::max({worst, hermiticity_defect(Cx), hermiticity_defect(Cy), hermiticity_defect(Cxp),
                      hermiticity_defect(beam_splitter_out(Cxp, Cyp))});
  }
  EXPECT_LE(worst, 1e-12);
}
