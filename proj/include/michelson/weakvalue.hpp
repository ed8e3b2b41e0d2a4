#pragma once

// Weak measurement of the arm displacement with a pulsed, phase-offset source.

#include <michelson/amplitude.hpp>
#include <michelson/constants.hpp>
#include <michelson/errors.hpp>
#include <michelson/grid.hpp>
#include <michelson/moments.hpp>
#include <michelson/quadrature.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace michelson {

namespace detail {

inline void require_offset(double theta, const char* what) {
  if (!std::isfinite(theta) ||
      std::abs(std::remainder(theta, 2.0 * std::numbers::pi)) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(theta))
    throw DomainError(std::string(what) +
                      ": theta = 0 makes the post-selected state orthogonal to the initial one");
}

}  // namespace detail

/// A_w = −i cot(θ/2).
inline complex weak_value(double theta) {
  detail::require_offset(theta, "weak value undefined");
  return {0.0, -std::cos(0.5 * theta) / std::sin(0.5 * theta)};
}

/// Φ(p) = (2πσ²)^{-1/4} exp(−(p−μ)²/(4σ²)), so that |Φ|² has mean μ and variance σ².
struct GaussianPointer {
  double mean = 0.0;
  double sigma = 1.0;

  double operator()(double p) const {
    const double u = (p - mean) / sigma;
    return std::pow(2.0 * std::numbers::pi * sigma * sigma, -0.25) * std::exp(-0.25 * u * u);
  }
  double variance() const { return sigma * sigma; }
};

struct WeakSetup {
  double theta = 0.1;
  double g = 0.0;  // coupling in units of inverse momentum
  GaussianPointer pointer;
};

/// First-order post-selected pointer Φ'(p) = Φ(p)(1 − iA_w g p), unnormalized.
struct PostselectedPointer {
  WeakSetup setup;
  complex weak{};
  double validity = 0.0;  // max |g A_w p| over μ ± 6σ
  std::vector<std::string> warnings;

  complex operator()(double p) const {
    return setup.pointer(p) * (1.0 - complex(0.0, 1.0) * weak * setup.g * p);
  }
};

inline PostselectedPointer postselected_pointer(const WeakSetup& setup) {
  if (!(setup.pointer.sigma > 0.0)) throw ConfigError("pointer.sigma", "must be positive");
  PostselectedPointer r;
  r.setup = setup;
  r.weak = weak_value(setup.theta);
  const double reach = std::max(std::abs(setup.pointer.mean - 6.0 * setup.pointer.sigma),
                                std::abs(setup.pointer.mean + 6.0 * setup.pointer.sigma));
  r.validity = std::abs(setup.g * r.weak) * reach;
  if (r.validity > 0.1)
    r.warnings.push_back("weak-coupling condition violated: max |g A_w p| = " +
                         std::to_string(r.validity));
  return r;
}

/// ⟨p⟩' − ⟨p⟩ ≈ 2g Im(A_w) Var(p).
inline double pointer_shift(const WeakSetup& setup) {
  return 2.0 * setup.g * weak_value(setup.theta).imag() * setup.pointer.variance();
}

/// ⟨p⟩' − ⟨p⟩ from quadrature of |Φ'(p)|².
inline double pointer_shift_numerical(const WeakSetup& setup, double rel_tol = 1e-12) {
  const auto phi = postselected_pointer(setup);
  const double mu = setup.pointer.mean;
  const double w = 12.0 * setup.pointer.sigma;
  numerics::QuadratureOptions q;
  q.rel_tol = rel_tol;
  q.rule = numerics::Rule::gk31;
  const std::vector<double> br{mu - w, mu - w / 3, mu, mu + w / 3, mu + w};
  const double norm = numerics::integrate_adaptive([&](double p) { return std::norm(phi(p)); }, br, q).value;
  const double first =
      numerics::integrate_adaptive([&](double p) { return (p - mu) * std::norm(phi(p)); }, br, q).value;
  return first / norm;
}

// ---------------------------------------------------------------------------
// Pulsed source

struct PulsedOptions {
  numerics::MomentOptions moments;
  std::size_t grid_points = 2001;
  double bulk_fraction = 1e-6;  // linearization is checked where n̄₀ ≥ fraction · max n̄₀
  double max_ratio = 0.5;       // reject |δn| > max_ratio · n̄₀ in the bulk
};

/// n̄(ω) = n̄₀(ω) + δn(ω) for a flat, classical mirror motion.
///
///   n̄₀ = sin²(θ/2) α²
///   δn = −(8/(2πc√ω)) ℐ_{s+3/2} α [sin²(θ/2) cos(ωτ) Z_com + sin(θ/2)cos(θ/2) sin(ωτ) Z_diff]
struct PulsedSpectrum {
  CoherentAmplitude alpha = CoherentAmplitude::zero();
  double theta = 0.0;
  double tau = 0.0;
  double z_com = 0.0;   // m·s
  double z_diff = 0.0;  // m·s
  numerics::MomentIntegrals moments;
  double omega0_bar = 0.0;  // ∫ωα² / ∫α²
  double linearization_ratio = 0.0;  // max |δn|/n̄₀ over the bulk

  FrequencyGrid grid = FrequencyGrid({0.0}, GridKind::optical);
  std::vector<double> n0;
  std::vector<double> dn;
  std::vector<double> f;  // (n̄₀ + δn) / ∫(n̄₀ + δn)

  double n0_at(double w) const {
    const double s = std::sin(0.5 * theta);
    const double a = alpha(w);
    return s * s * a * a;
  }
  double dn_at(double w) const {
    if (!(w > 0.0)) return 0.0;
    const double a = alpha(w);
    if (a == 0.0) return 0.0;
    const double s = std::sin(0.5 * theta);
    const double c = std::cos(0.5 * theta);
    const double pre = -8.0 * moments.Is_3_2 / (two_pi * speed_of_light * std::sqrt(w));
    return pre * a * (s * s * std::cos(w * tau) * z_com + s * c * std::sin(w * tau) * z_diff);
  }
  double n_at(double w) const { return n0_at(w) + dn_at(w); }
};

inline double mean_frequency_of_square(const CoherentAmplitude& alpha, const numerics::MomentOptions& opt) {
  const auto [lo, hi] = alpha.support(opt.cutoff_widths);
  numerics::QuadratureOptions q;
  q.rel_tol = opt.rel_tol;
  q.rule = opt.rule;
  const double mid = 0.5 * (lo + hi);
  auto sq = [&](double w) {
    const double a = alpha(w);
    return a * a;
  };
  const double J = numerics::integrate_adaptive(sq, {lo, mid, hi}, q).value;
  if (J == 0.0) throw DomainError("amplitude is identically zero");
  const double first =
      numerics::integrate_adaptive([&](double w) { return (w - mid) * sq(w); }, {lo, mid, hi}, q).value;
  return mid + first / J;
}

inline PulsedSpectrum photon_number_spectrum(const CoherentAmplitude& alpha, double theta, double tau,
                                             double z_com, double z_diff,
                                             const PulsedOptions& opt = {}) {
  if (alpha.is_monochromatic())
    throw DomainError("photon-number spectrum needs a broadband amplitude");
  PulsedSpectrum p;
  p.alpha = alpha;
  p.theta = theta;
  p.tau = tau;
  p.z_com = z_com;
  p.z_diff = z_diff;
  p.moments = numerics::moment_integrals(alpha, tau, opt.moments);
  if (p.moments.J == 0.0) throw DomainError("amplitude is identically zero");
  p.omega0_bar = mean_frequency_of_square(alpha, opt.moments);

  const auto [lo, hi] = alpha.support(opt.moments.cutoff_widths);
  p.grid = FrequencyGrid::linear(std::max(lo, hi * 1e-9), hi, std::max<std::size_t>(opt.grid_points, 2),
                                 GridKind::optical);
  const std::size_t n = p.grid.size();
  p.n0.resize(n);
  p.dn.resize(n);
  p.f.resize(n);
  double peak = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    p.n0[i] = p.n0_at(p.grid[i]);
    p.dn[i] = p.dn_at(p.grid[i]);
    peak = std::max(peak, p.n0[i]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (peak > 0.0 && p.n0[i] >= opt.bulk_fraction * peak)
      p.linearization_ratio = std::max(p.linearization_ratio, std::abs(p.dn[i]) / p.n0[i]);
  }
  if (p.linearization_ratio > opt.max_ratio)
    throw LinearizationError("first-order expansion in Z invalid: max |dn|/n0 = " +
                                 std::to_string(p.linearization_ratio),
                             p.linearization_ratio);
  const auto w = p.grid.trapezoid_weights();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += w[i] * (p.n0[i] + p.dn[i]);
  for (std::size_t i = 0; i < n; ++i) p.f[i] = total != 0.0 ? (p.n0[i] + p.dn[i]) / total : 0.0;
  return p;
}

/// ⟨ω⟩ − ω̄₀ = (8ℐ_{s+3/2}/(2πc𝒥)) [Z_com (ω̄₀ℐ_{c−1/2} − ℐ_{c+1/2})
///                                 + cot(θ/2) Z_diff (ω̄₀ℐ_{s−1/2} − ℐ_{s+1/2})]
inline double frequency_expectation_shift(const numerics::MomentIntegrals& m, double omega0_bar,
                                          double theta, double z_com, double z_diff) {
  detail::require_offset(theta, "frequency shift undefined");
  const double cot = std::cos(0.5 * theta) / std::sin(0.5 * theta);
  const double pre = 8.0 * m.Is_3_2 / (two_pi * speed_of_light * m.J);
  return pre * (z_com * (omega0_bar * m.Ic_minus - m.Ic_plus) +
                cot * z_diff * (omega0_bar * m.Is_minus - m.Is_plus));
}

inline double frequency_expectation_shift(const CoherentAmplitude& alpha, double theta, double tau,
                                          double z_com, double z_diff,
                                          const numerics::MomentOptions& opt = {}) {
  detail::require_offset(theta, "frequency shift undefined");
  const auto m = numerics::moment_integrals(alpha, tau, opt);
  return frequency_expectation_shift(m, mean_frequency_of_square(alpha, opt), theta, z_com, z_diff);
}

/// ∫(ω − ω̄₀) n̄ / ∫n̄ by adaptive quadrature of the full spectrum.
inline double direct_frequency_shift(const PulsedSpectrum& p, double rel_tol = 1e-12) {
  const auto [lo, hi] = p.alpha.support(12.0);
  numerics::QuadratureOptions q;
  q.rel_tol = rel_tol;
  q.rule = numerics::Rule::gk31;
  q.max_panels = 20000;
  const double c = p.omega0_bar;
  std::vector<double> br;
  const int pieces = 24;
  for (int i = 0; i <= pieces; ++i) br.push_back(lo + (hi - lo) * i / pieces);
  const double norm = numerics::integrate_adaptive([&](double w) { return p.n_at(w); }, br, q).value;
  if (norm == 0.0) throw DomainError("photon-number spectrum integrates to zero");
  const double first =
      numerics::integrate_adaptive([&](double w) { return (w - c) * p.n_at(w); }, br, q).value;
  return first / norm;
}

/// ⟨ω⟩ = ∫ω n̄ / ∫n̄.
inline double direct_mean_frequency(const PulsedSpectrum& p, double rel_tol = 1e-12) {
  return p.omega0_bar + direct_frequency_shift(p, rel_tol);
}

}  // namespace michelson
