#pragma once

// Acceptance checks. Each returns the measured deviation against its threshold.

#include <michelson/amplitude.hpp>
#include <michelson/config.hpp>
#include <michelson/conventional.hpp>
#include <michelson/dynamics.hpp>
#include <michelson/fields.hpp>
#include <michelson/moments.hpp>
#include <michelson/weakvalue.hpp>

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace michelson::validation {

struct CheckResult {
  int id = 0;
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  bool passed = false;
  double seconds = 0.0;
  std::string detail;
};

/// Defaults for the pulsed checks. These are artifact choices, not measured values.
struct PulseDefaults {
  double center = 2.35e15;
  double width_fraction = 0.05;
  double peak = 1.0;
  double arm_length_m = 2.5e-6;

  CoherentAmplitude amplitude() const { return GaussianPulse{peak, center, width_fraction * center}; }
  double tau() const { return arm_length_m / speed_of_light; }
};

inline std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i)
    g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(n - 1));
  return g;
}

inline std::vector<double> detector_band() { return log_grid(two_pi * 10.0, two_pi * 1e4, 200); }

namespace detail {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline InterferometerConfig tuned(InterferometerConfig cfg) {
  cfg.arm_length_m = tune_arm_length(cfg.arm_length_m, cfg.omega0);
  return cfg;
}

}  // namespace detail

/// 1. The θ = 0 pipeline against the closed θ = 0 relation.
inline CheckResult check_theta_zero_reduction(const InterferometerConfig& base = {}) {
  detail::Stopwatch clock;
  const auto grid = detector_band();
  CheckResult r{1, "theta=0 reduction", 0.0, 1e-12, false, 0.0, {}};
  r.measured = check_theta_zero(detail::tuned(base), grid);
  r.seconds = clock.seconds();
  r.passed = r.measured <= r.threshold && r.seconds < 1.0;
  r.detail = "max |coefficient deviation| over 200 log-spaced Omega in 2pi*[10,1e4] Hz";
  return r;
}

/// 2. Minimum of S_h/h_SQL² at θ = 0 and the κ where it is attained.
inline CheckResult check_sql_touching(const InterferometerConfig& base = {}) {
  detail::Stopwatch clock;
  auto cfg = detail::tuned(base);
  cfg.theta = 0.0;
  auto ratio = [&](double log_omega) {
    const double W = std::exp(log_omega);
    const auto t = two_photon(sideband_io(cfg, W), cfg);
    return noise_spectrum(t) / (t.h_sql * t.h_sql);
  };
  const auto grid = detector_band();
  std::size_t best = 0;
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (ratio(std::log(grid[i])) < ratio(std::log(grid[best]))) best = i;
  const double lo = std::log(grid[best == 0 ? 0 : best - 1]);
  const double hi = std::log(grid[std::min(best + 1, grid.size() - 1)]);
  const auto [x, fmin] = boost::math::tools::brent_find_minima(ratio, lo, hi, 40);
  const double k = kappa(cfg, std::exp(x));
  CheckResult r{2, "SQL touching", 0.0, 1e-6, false, 0.0, {}};
  r.measured = std::abs(fmin - 1.0);
  r.seconds = clock.seconds();
  r.passed = r.measured <= 1e-6 && std::abs(k - 1.0) <= 1e-4 && r.seconds < 1.0;
  char buf[160];
  std::snprintf(buf, sizeof buf, "min S_h/h_SQL^2 = %.12f at kappa = %.9f (|kappa-1| <= 1e-4)", fmin, k);
  r.detail = buf;
  return r;
}

/// 3. Phase-stripped determinant of the (a, d) → (b₁, b₂) transfer.
inline CheckResult check_symplectic(const InterferometerConfig& base = {}) {
  detail::Stopwatch clock;
  CheckResult r{3, "symplectic determinant", 0.0, 1e-10, false, 0.0, {}};
  const auto grid = detector_band();
  double a_block = 0.0;
  for (double th : {0.0, 0.01, 0.1, 1.0}) {
    auto cfg = detail::tuned(base);
    cfg.theta = th;
    const double c = std::cos(0.5 * th);
    for (double W : grid) {
      const auto t = two_photon(sideband_io(cfg, W), cfg);
      r.measured = std::max(r.measured, std::abs(symplectic_determinant(t, cfg.tau()) - 1.0));
      const complex da = std::polar(1.0, -4.0 * W * cfg.tau()) * transfer_determinant_a(t);
      a_block = std::max(a_block, std::abs(da - c * c));
    }
  }
  r.seconds = clock.seconds();
  r.passed = r.measured <= r.threshold;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "max |det(a) + det(d) - 1|, theta in {0, 0.01, 0.1, 1}; det(a) alone = cos^2(theta/2) to %.1e",
                a_block);
  r.detail = buf;
  return r;
}

/// Least-squares slope of log|y| against log x.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(std::abs(y[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// 4. Weak-value scaling of the frequency shift with θ at Z_com = 0.
inline CheckResult check_weak_value_scaling(const PulseDefaults& pulse = {}, double z_diff = 1e-30) {
  detail::Stopwatch clock;
  const auto thetas = log_grid(1e-3, 1e-1, 41);
  std::vector<double> shifts;
  for (double th : thetas)
    shifts.push_back(frequency_expectation_shift(pulse.amplitude(), th, pulse.tau(), 0.0, z_diff));
  const double slope = loglog_slope(thetas, shifts);
  CheckResult r{4, "weak-value scaling", std::abs(slope + 1.0), 1e-3, false, 0.0, {}};
  r.seconds = clock.seconds();
  r.passed = r.measured <= r.threshold && r.seconds < 10.0;
  r.detail = "log-log slope " + std::to_string(slope) + " over theta in [1e-3, 1e-1]";
  return r;
}

/// 5. Frequency-shift formula against direct quadrature of the spectrum.
inline CheckResult check_shift_oracle(const PulseDefaults& pulse = {}) {
  detail::Stopwatch clock;
  CheckResult r{5, "shift formula vs direct mean", 0.0, 1e-4, false, 0.0, {}};
  int used = 0;
  for (double th : {0.01, 0.1, 1.0, 2.5}) {
    for (double mix : {0.0, 0.5, 1.0}) {
      // Pick Z so the bulk ratio |δn|/n̄₀ sits at 1e-3, then at 1e-5.
      const double zc = mix, zd = 1.0 - mix * 0.5;
      const auto unit = photon_number_spectrum(pulse.amplitude(), th, pulse.tau(), zc * 1e-30, zd * 1e-30);
      for (double target : {1e-3, 1e-5}) {
        const double scale = 1e-30 * target / unit.linearization_ratio;
        const auto p = photon_number_spectrum(pulse.amplitude(), th, pulse.tau(), zc * scale, zd * scale);
        const double formula =
            frequency_expectation_shift(p.moments, p.omega0_bar, th, zc * scale, zd * scale);
        const double direct = direct_frequency_shift(p);
        r.measured = std::max(r.measured, std::abs(formula - direct) / std::abs(direct));
        ++used;
      }
    }
  }
  r.seconds = clock.seconds();
  r.passed = r.measured <= r.threshold;
  r.detail = "max relative error over " + std::to_string(used) + " cases with |dn| <= 1e-3 n0";
  return r;
}

/// 6. Analytic pointer shift against brute-force moments of |Φ'|².
inline CheckResult check_pointer_shift(double theta = 0.2) {
  detail::Stopwatch clock;
  CheckResult r{6, "pointer shift vs brute force", 0.0, 1.0, false, 0.0, {}};
  double worst_ratio = 0.0;
  for (double g : {1e-4, 3e-4, 1e-3, 3e-3, 1e-2}) {
    WeakSetup s{theta, g, {0.0, 1.0}};
    const double analytic = pointer_shift(s);
    const double brute = pointer_shift_numerical(s);
    const double err = std::abs(analytic - brute) / std::abs(brute);
    const double bound = 10.0 * g * std::abs(weak_value(theta)) * s.pointer.sigma;
    worst_ratio = std::max(worst_ratio, err / bound);
  }
  r.measured = worst_ratio;
  r.seconds = clock.seconds();
  r.passed = r.measured <= r.threshold;
  r.detail = "max (relative error / 10 g |A_w| sigma), g in [1e-4, 1e-2]";
  return r;
}

/// 7. Moment integrals under cutoff doubling and rule refinement; sine moments at τ = 0.
inline CheckResult check_quadrature_integrity(const PulseDefaults& pulse = {}) {
  detail::Stopwatch clock;
  CheckResult r{7, "quadrature integrity", 0.0, 1e-8, false, 0.0, {}};
  const auto alpha = pulse.amplitude();
  numerics::MomentOptions base;
  numerics::MomentOptions wide = base;
  wide.cutoff_widths = 2.0 * base.cutoff_widths;
  numerics::MomentOptions fine = base;
  fine.rule = numerics::Rule::gk31;
  auto as_array = [](const numerics::MomentIntegrals& m) {
    return std::array<double, 6>{m.J, m.Ic_minus, m.Ic_plus, m.Is_minus, m.Is_plus, m.Is_3_2};
  };
  const auto m0 = as_array(numerics::moment_integrals(alpha, pulse.tau(), base));
  for (const auto& o : {wide, fine}) {
    const auto m1 = as_array(numerics::moment_integrals(alpha, pulse.tau(), o));
    for (std::size_t i = 0; i < 6; ++i)
      r.measured = std::max(r.measured, std::abs(m1[i] - m0[i]) / std::abs(m0[i]));
  }
  const auto z = numerics::moment_integrals(alpha, 0.0, base);
  const bool zero_sine = z.Is_minus == 0.0 && z.Is_plus == 0.0 && z.Is_3_2 == 0.0;
  r.seconds = clock.seconds();
  r.passed = r.measured <= r.threshold && zero_sine;
  r.detail = std::string("max relative drift; sine moments at tau=0 ") + (zero_sine ? "exactly 0" : "NONZERO");
  return r;
}

/// 8. Static radiation-pressure force on each mirror against I₀/c.
inline CheckResult check_dc_force(const InterferometerConfig& base = {}) {
  detail::Stopwatch clock;
  auto cfg = base;
  cfg.theta = 0.0;
  const double N = carrier_normalization(cfg.power_w, cfg.omega0);
  const CoherentAmplitude alpha = Monochromatic{N, cfg.omega0};
  const double oracle = 2.0 * (0.5 * cfg.power_w) / speed_of_light;
  CheckResult r{8, "DC radiation-pressure force", 0.0, 1e-9, false, 0.0, {}};
  for (Side side : {Side::x, Side::y}) {
    const ForceSpectrum f(alpha, cfg.theta, cfg.tau(), side);
    complex dc{};
    for (const auto& l : f.lines())
      if (l.omega == 0.0) dc += l.weight;
    r.measured = std::max(r.measured, std::abs(dc - oracle) / oracle);
  }
  r.seconds = clock.seconds();
  r.passed = r.measured <= r.threshold;
  r.detail = "relative deviation from I0/c on both mirrors";
  return r;
}

/// Random field with F(−ω) = F(ω)† on a symmetric grid.
inline QuadratureField random_hermitian_field(const FrequencyGrid& g, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  QuadratureField f(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] < 0.0) continue;
    const std::size_t j = *g.index_of(-g[i]);
    for (auto* v : {&f.classical, &f.a, &f.d, &f.signal}) {
      (*v)[i] = {n(rng), n(rng)};
      (*v)[j] = std::conj((*v)[i]);
    }
  }
  return f;
}

/// 9. Junction unitarity and hermiticity pairing on random fields.
inline CheckResult check_beam_splitter(std::size_t cases = 1000, std::uint64_t seed = 20240611) {
  detail::Stopwatch clock;
  CheckResult r{9, "beam-splitter unitarity and hermiticity", 0.0, 1e-12, false, 0.0, {}};
  std::mt19937_64 rng(seed);
  std::vector<double> pts;
  for (int k = 1; k <= 8; ++k) {
    pts.push_back(-1e15 * k);
    pts.push_back(1e15 * k);
  }
  std::sort(pts.begin(), pts.end());
  const FrequencyGrid g(pts, GridKind::sideband);
  for (std::size_t c = 0; c < cases; ++c) {
    const auto D = random_hermitian_field(g, rng);
    const auto A = random_hermitian_field(g, rng);
    const auto [Cx, Cy] = beam_splitter_in(D, A);
    for (std::size_t i = 0; i < g.size(); ++i) {
      for (auto slot : {&QuadratureField::classical, &QuadratureField::a, &QuadratureField::d,
                        &QuadratureField::signal}) {
        const double in = std::norm((D.*slot)[i]) + std::norm((A.*slot)[i]);
        const double out = std::norm((Cx.*slot)[i]) + std::norm((Cy.*slot)[i]);
        r.measured = std::max(r.measured, std::abs(out - in) / std::max(1.0, in));
      }
    }
    const auto B = beam_splitter_out(Cx, Cy);
    for (std::size_t i = 0; i < g.size(); ++i)
      r.measured = std::max({r.measured, std::abs(B.a[i] - A.a[i]), std::abs(B.d[i] - A.d[i]),
                             std::abs(B.classical[i] - A.classical[i])});
    r.measured = std::max({r.measured, hermiticity_defect(Cx), hermiticity_defect(Cy),
                           hermiticity_defect(B)});
  }
  r.seconds = clock.seconds();
  r.passed = r.measured <= r.threshold;
  r.detail = std::to_string(cases) + " random hermitian (D, A) pairs";
  return r;
}

inline std::vector<CheckResult> run_all(const InterferometerConfig& cfg = {}, const PulseDefaults& pulse = {}) {
  cfg.validate();
  return {check_theta_zero_reduction(cfg), check_sql_touching(cfg), check_symplectic(cfg),
          check_weak_value_scaling(pulse),  check_shift_oracle(pulse), check_pointer_shift(),
          check_quadrature_integrity(pulse), check_dc_force(cfg),     check_beam_splitter()};
}

}  // namespace michelson::validation
