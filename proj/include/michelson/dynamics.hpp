#pragma once

// Radiation-pressure forces on the end mirrors and their equations of motion.

#include <michelson/amplitude.hpp>
#include <michelson/config.hpp>
#include <michelson/constants.hpp>
#include <michelson/convolution.hpp>
#include <michelson/errors.hpp>
#include <michelson/fields.hpp>
#include <michelson/quadrature.hpp>
#include <michelson/sideband.hpp>

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace michelson {

/// N = √(I₀/(ħω₀)), photons per second under the square root.
inline double carrier_normalization(double power_w, double omega0) {
  if (!(power_w > 0.0)) throw ConfigError("power_w", "must be positive");
  if (!(omega0 > 0.0)) throw ConfigError("omega0_rad_s", "must be positive");
  return std::sqrt(power_w / (hbar * omega0));
}

/// κ = 8ω₀I₀/(mc²Ω²).
inline double kappa(const InterferometerConfig& cfg, double Omega) {
  if (Omega == 0.0) throw DomainError("kappa has a 1/Omega^2 pole at Omega = 0");
  return 8.0 * cfg.omega0 * cfg.power_w /
         (cfg.mass_kg * speed_of_light * speed_of_light * Omega * Omega);
}

/// h_SQL = √(8ħ/(mΩ²L²)).
inline double h_sql(const InterferometerConfig& cfg, double Omega) {
  if (Omega == 0.0) throw DomainError("h_SQL has a 1/Omega pole at Omega = 0");
  return std::sqrt(8.0 * hbar / (cfg.mass_kg * Omega * Omega * cfg.arm_length_m * cfg.arm_length_m));
}

enum class Side { x, y };

/// How the arm offset phase enters the force at mechanical frequency Ω.
///   constant:  e^{∓iθ/2} for every Ω
///   hermitian: e^{∓i sgn(Ω) θ/2}, which keeps F(−Ω) = F(Ω)*
enum class PhaseConvention { constant, hermitian };

struct ForceOptions {
  bool drop_double_frequency = true;
  PhaseConvention phase = PhaseConvention::constant;
  double rel_tol = 1e-9;
  double cutoff_widths = 12.0;
};

/// Regular part of P(s) = ∫ dω/2π √|ω(s−ω)| D_c(ω) D_c(s−ω) for a broadband α.
inline double pair_spectrum(const CoherentAmplitude& alpha, double s, const ForceOptions& opt = {}) {
  if (alpha.is_monochromatic()) return 0.0;
  const auto [lo, hi] = alpha.support(opt.cutoff_widths);
  numerics::QuadratureOptions q;
  q.rel_tol = opt.rel_tol;
  q.abs_tol = 0.0;

  auto difference = [&](double shift) {
    // ∫_{u>max(0,−shift)} √(u(u+shift)) α(u) α(u+shift) du
    const double a = std::max({lo, lo - shift, 0.0});
    const double b = std::min(hi, hi - shift);
    if (!(b > a)) return 0.0;
    auto f = [&](double u) {
      const double v = u + shift;
      if (!(v > 0.0)) return 0.0;
      return std::sqrt(u * v) * alpha(u) * alpha(v);
    };
    return numerics::integrate_adaptive(f, a, b, q).value;
  };

  double total = difference(s) + difference(-s);
  if (!opt.drop_double_frequency) {
    const double t = std::abs(s);
    const double a = std::max(lo, t - hi);
    const double b = std::min(hi, t - lo);
    if (b > a) {
      auto f = [&](double u) {
        const double v = t - u;
        if (!(u > 0.0) || !(v > 0.0)) return 0.0;
        return std::sqrt(u * v) * alpha(u) * alpha(v);
      };
      total += numerics::integrate_adaptive(f, a, b, q).value;
    }
  }
  return total / two_pi;
}

/// δ-lines of P(s) for a monochromatic carrier, weights in units of 2πδ.
inline std::vector<SpectralLine> pair_spectrum_lines(const CoherentAmplitude& alpha,
                                                     bool drop_double_frequency = true) {
  if (!alpha.is_monochromatic()) return {};
  const auto& m = alpha.monochromatic();
  const double n2w = m.N * m.N * m.omega0;
  std::vector<SpectralLine> lines{{0.0, complex{2.0 * n2w}}};
  if (!drop_double_frequency) {
    lines.push_back({2.0 * m.omega0, complex{n2w}});
    lines.push_back({-2.0 * m.omega0, complex{n2w}});
  }
  return lines;
}

/// Linearized radiation-pressure force on one end mirror.
///
/// F(Ω) = (ħ/2c) φ e^{iΩτ} P(Ω)
///      + (ħ/c) φ e^{iΩτ} ∫dω/2π √|ω(Ω−ω)| D_c(ω) (D_v ± Â)(Ω−ω)
///      + ∫ds/2π k(s) Z(Ω−s),   k(s) = i(ħ/2c²) φ s e^{isτ} P(s)
/// with φ = e^{∓iθ/2} and the upper signs on the x mirror.
class ForceSpectrum {
 public:
  ForceSpectrum(CoherentAmplitude alpha, double theta, double tau, Side side, ForceOptions opt = {})
      : alpha_(std::move(alpha)), theta_(theta), tau_(tau), side_(side), opt_(opt) {}

  Side side() const { return side_; }
  const CoherentAmplitude& amplitude() const { return alpha_; }

  complex offset_phase(double Omega) const {
    double sgn = 1.0;
    if (opt_.phase == PhaseConvention::hermitian) sgn = Omega > 0.0 ? 1.0 : (Omega < 0.0 ? -1.0 : 0.0);
    return std::polar(1.0, (side_ == Side::x ? -0.5 : 0.5) * sgn * theta_);
  }

  /// Classical δ-lines, weight · 2πδ(Ω − ω).
  std::vector<SpectralLine> lines() const {
    std::vector<SpectralLine> out;
    for (const auto& l : pair_spectrum_lines(alpha_, opt_.drop_double_frequency)) {
      const complex w = hbar / (2.0 * speed_of_light) * offset_phase(l.omega) *
                        std::polar(1.0, l.omega * tau_) * l.weight;
      out.push_back({l.omega, w});
    }
    return out;
  }

  /// Regular classical part at Ω.
  complex classical(double Omega) const {
    return hbar / (2.0 * speed_of_light) * offset_phase(Omega) * std::polar(1.0, Omega * tau_) *
           pair_spectrum(alpha_, Omega, opt_);
  }

  /// +1 when the vacuum enters as D_v + Â (x mirror), −1 for D_v − Â.
  double vacuum_sign() const { return side_ == Side::x ? 1.0 : -1.0; }

  /// Monochromatic carrier: pairs (ω', c) such that the vacuum force at Ω is
  /// Σ c·(D_v ± Â)(ω'), with ω' ∈ {Ω − ω₀, Ω + ω₀}.
  std::vector<std::pair<double, complex>> vacuum_lines(double Omega, bool approximate_sqrt) const {
    if (!alpha_.is_monochromatic()) return {};
    const auto& m = alpha_.monochromatic();
    const complex pre = hbar / speed_of_light * offset_phase(Omega) * std::polar(1.0, Omega * tau_) * m.N;
    std::vector<std::pair<double, complex>> out;
    for (double w : {Omega - m.omega0, Omega + m.omega0}) {
      const double root = approximate_sqrt ? m.omega0 : std::sqrt(m.omega0 * std::abs(w));
      out.emplace_back(w, pre * root);
    }
    return out;
  }

  /// Broadband carrier: density per dω of the vacuum force coefficient on
  /// (D_v ± Â)(Ω − ω).
  complex vacuum_density(double Omega, double omega) const {
    return hbar / speed_of_light * offset_phase(Omega) * std::polar(1.0, Omega * tau_) *
           std::sqrt(std::abs(omega * (Omega - omega))) * alpha_.classical(omega) / two_pi;
  }

  /// Mirror-motion feedback kernel k(s) (regular part).
  complex feedback_kernel(double s) const {
    return complex(0.0, hbar / (2.0 * speed_of_light * speed_of_light)) * offset_phase(s) * s *
           std::polar(1.0, s * tau_) * pair_spectrum(alpha_, s, opt_);
  }

 private:
  CoherentAmplitude alpha_;
  double theta_;
  double tau_;
  Side side_;
  ForceOptions opt_;
};

inline ForceSpectrum radiation_pressure_spectrum(const CoherentAmplitude& alpha, double theta,
                                                 double tau, Side side, ForceOptions opt = {}) {
  return ForceSpectrum(alpha, theta, tau, side, opt);
}

// ---------------------------------------------------------------------------
// Monochromatic carrier at a sideband frequency

struct SidebandMotionOptions {
  bool radiation_pressure = true;
  bool approximate_sqrt = true;
  PhaseConvention phase = PhaseConvention::constant;
};

/// Z_com and Z_diff at a signed mechanical frequency Ω.
struct MirrorResponse {
  double Omega = 0.0;
  SidebandOperator com;
  SidebandOperator diff;
};

inline MirrorResponse solve_mirror_motion_sideband(const InterferometerConfig& cfg, double Omega,
                                                   const SidebandMotionOptions& opt = {}) {
  cfg.validate();
  if (Omega == 0.0)
    throw DomainError("mirror response has a 1/Omega^2 pole at Omega = 0; exclude it from the grid");
  MirrorResponse r;
  r.Omega = Omega;

  // ½ L h(Ω), stored per unit h/h_SQL(|Ω|).
  const complex strain = 0.5 * cfg.arm_length_m * h_sql(cfg, Omega);
  (Omega > 0.0 ? r.diff.strain_plus : r.diff.strain_minus) = strain;
  if (!opt.radiation_pressure) return r;

  const double N = carrier_normalization(cfg.power_w, cfg.omega0);
  const CoherentAmplitude alpha = Monochromatic{N, cfg.omega0};
  ForceOptions fo;
  fo.phase = opt.phase;
  const ForceSpectrum fx(alpha, cfg.theta, cfg.tau(), Side::x, fo);
  const ForceSpectrum fy(alpha, cfg.theta, cfg.tau(), Side::y, fo);
  const double inertia = cfg.mass_kg * Omega * Omega;

  auto force_operator = [&](const ForceSpectrum& f) {
    SidebandOperator op;
    // Carrier: the Ω = 0 line, kept with its 1/Ω² prefactor.
    for (const auto& l : f.lines())
      if (l.omega == 0.0) op.carrier += l.weight;
    op.carrier_divergent = true;
    for (const auto& [w, coeff] : f.vacuum_lines(Omega, opt.approximate_sqrt)) {
      op[sideband_mode(Input::d, w, cfg.omega0)] += coeff;
      op[sideband_mode(Input::a, w, cfg.omega0)] += f.vacuum_sign() * coeff;
    }
    return op;
  };
  const auto Fx = force_operator(fx);
  const auto Fy = force_operator(fy);

  r.com = (-1.0 / inertia) * (Fx + Fy);
  r.diff = r.diff + (1.0 / inertia) * (Fy - Fx);
  return r;
}

// ---------------------------------------------------------------------------
// General amplitude, classical motion

enum class MotionMode { constant_displacement, classical_frequency_domain };

struct GeneralMotionOptions {
  MotionMode mode = MotionMode::constant_displacement;
  double reference_omega = 0.0;  // Ω at which forces are frozen in constant mode
  ForceOptions force;
};

struct GeneralMotionResult {
  MirrorMotionSpec motion;
  double residual = 0.0;  // max |one feedback iteration| / max |Z|
  std::vector<std::string> warnings;
};

/// Flat strain spectrum h₀ (constant mode) with frozen forces at Ω_ref.
inline GeneralMotionResult solve_mirror_motion_general(const InterferometerConfig& cfg,
                                                       const CoherentAmplitude& alpha, complex h0,
                                                       const GeneralMotionOptions& opt) {
  cfg.validate();
  if (opt.mode != MotionMode::constant_displacement)
    throw ConfigError("dynamics.mode", "a scalar strain needs constant_displacement mode");
  GeneralMotionResult r;
  r.motion.diff.flat_z = 0.5 * cfg.arm_length_m * h0;
  const double W = opt.reference_omega;
  if (W == 0.0) {
    r.warnings.push_back("reference frequency is 0: radiation-pressure response omitted (pole)");
    return r;
  }
  const ForceSpectrum fx(alpha, cfg.theta, cfg.tau(), Side::x, opt.force);
  const ForceSpectrum fy(alpha, cfg.theta, cfg.tau(), Side::y, opt.force);
  const complex Fx = fx.classical(W);
  const complex Fy = fy.classical(W);
  const double inertia = cfg.mass_kg * W * W;
  r.motion.com.flat_z = -(Fx + Fy) / inertia;
  r.motion.diff.flat_z += (Fy - Fx) / inertia;
  return r;
}

/// Strain sampled on a uniform sideband lattice; Z_com and Z_diff on the same grid.
inline GeneralMotionResult solve_mirror_motion_general(const InterferometerConfig& cfg,
                                                       const CoherentAmplitude& alpha,
                                                       const numerics::GriddedFunction& strain,
                                                       const GeneralMotionOptions& opt) {
  cfg.validate();
  if (opt.mode != MotionMode::classical_frequency_domain)
    throw ConfigError("dynamics.mode", "a sampled strain needs classical_frequency_domain mode");
  const auto& g = strain.grid;
  if (g.kind() != GridKind::sideband) throw GridError("strain must be sampled on a sideband grid");
  GeneralMotionResult r;
  if (g.index_of(0.0, 0.0)) r.warnings.push_back("Omega = 0 excluded from the motion grid (1/Omega^2 pole)");

  const ForceSpectrum fx(alpha, cfg.theta, cfg.tau(), Side::x, opt.force);
  const ForceSpectrum fy(alpha, cfg.theta, cfg.tau(), Side::y, opt.force);
  const std::size_t n = g.size();
  std::vector<complex> com0(n), diff0(n), kx(n), ky(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double W = g[i];
    kx[i] = fx.feedback_kernel(W);
    ky[i] = fy.feedback_kernel(W);
    if (W == 0.0) continue;
    const double inertia = cfg.mass_kg * W * W;
    const complex Fx = fx.classical(W);
    const complex Fy = fy.classical(W);
    com0[i] = -(Fx + Fy) / inertia;
    diff0[i] = (Fy - Fx) / inertia + 0.5 * cfg.arm_length_m * strain.values[i];
  }

  std::vector<complex> zx(n), zy(n);
  for (std::size_t i = 0; i < n; ++i) {
    zx[i] = com0[i] + diff0[i];
    zy[i] = com0[i] - diff0[i];
  }
  const auto fbx = numerics::convolve_on_grid(numerics::GriddedFunction(g, kx),
                                              numerics::GriddedFunction(g, zx));
  const auto fby = numerics::convolve_on_grid(numerics::GriddedFunction(g, ky),
                                              numerics::GriddedFunction(g, zy));
  std::vector<complex> com1 = com0, diff1 = diff0;
  double scale = 0.0, change = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double W = g[i];
    scale = std::max({scale, std::abs(com0[i]), std::abs(diff0[i])});
    if (W == 0.0) continue;
    const double inertia = cfg.mass_kg * W * W;
    com1[i] -= (fbx.values[i] + fby.values[i]) / inertia;
    diff1[i] += (fby.values[i] - fbx.values[i]) / inertia;
    change = std::max({change, std::abs(com1[i] - com0[i]), std::abs(diff1[i] - diff0[i])});
  }
  r.residual = scale > 0.0 ? change / scale : 0.0;
  r.motion.com.sampled.emplace(g, std::move(com1));
  r.motion.diff.sampled.emplace(g, std::move(diff1));
  return r;
}

}  // namespace michelson
