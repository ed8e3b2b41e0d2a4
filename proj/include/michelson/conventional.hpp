#pragma once

// Monochromatic carrier: sideband input-output relations and strain noise.

#include <michelson/config.hpp>
#include <michelson/constants.hpp>
#include <michelson/dynamics.hpp>
#include <michelson/errors.hpp>
#include <michelson/sideband.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <string>

namespace michelson {

struct KappaHsql {
  double kappa = 0.0;
  double h_sql = 0.0;
};

inline KappaHsql kappa_hsql(const InterferometerConfig& cfg, double Omega) {
  cfg.validate();
  return {kappa(cfg, Omega), h_sql(cfg, Omega)};
}

struct DarkPortCheck {
  long long n = 0;
  double residual = 0.0;  // ω₀τ − 2nπ
  bool exact = false;            // |residual| < 1e-12
  bool within_rounding = false;  // |residual| within double rounding of ω₀τ
};

inline DarkPortCheck dark_port_check(double omega0, double tau) {
  const double phase = omega0 * tau;
  DarkPortCheck r;
  r.n = std::llround(phase / two_pi);
  r.residual = phase - two_pi * static_cast<double>(r.n);
  r.exact = std::abs(r.residual) < 1e-12;
  r.within_rounding = std::abs(r.residual) <= 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, phase);
  return r;
}

/// Nearest arm length with ω₀L/c = 2nπ.
inline double tune_arm_length(double arm_length_m, double omega0) {
  if (!(arm_length_m > 0.0) || !(omega0 > 0.0))
    throw ConfigError("interferometer.arm_length_m", "tuning needs positive length and frequency");
  const double quantum = two_pi * speed_of_light / omega0;
  return std::max(1.0, std::round(arm_length_m / quantum)) * quantum;
}

struct SidebandOptions {
  bool approximate_sqrt = true;
  bool radiation_pressure = true;
  PhaseConvention phase = PhaseConvention::constant;
};

struct SidebandPair {
  double Omega = 0.0;
  SidebandOperator plus;   // b(ω₀ + Ω)
  SidebandOperator minus;  // b(ω₀ − Ω)
  double dark_port_residual = 0.0;
};

/// b_± assembled from the output field and the solved mirror motion at ±Ω.
/// The dark-port factor e^{2iω₀τ} is taken as 1; its residual is reported.
inline SidebandPair sideband_io(const InterferometerConfig& cfg, double Omega,
                                const SidebandOptions& opt = {}) {
  cfg.validate();
  if (!(Omega > 0.0)) throw DomainError("sideband frequency must be positive (Omega = 0 is a pole)");
  const double tau = cfg.tau();
  const double s = std::sin(0.5 * cfg.theta);
  const double ct = std::cos(0.5 * cfg.theta);
  const double N = carrier_normalization(cfg.power_w, cfg.omega0);
  const double w0 = cfg.omega0;
  const complex i{0.0, 1.0};

  SidebandMotionOptions mo;
  mo.approximate_sqrt = opt.approximate_sqrt;
  mo.radiation_pressure = opt.radiation_pressure;
  mo.phase = opt.phase;

  auto build = [&](double sigma) {
    const double W = sigma * Omega;
    const double w = w0 + W;
    const auto Z = solve_mirror_motion_sideband(cfg, W, mo);
    const complex G = opt.approximate_sqrt
                          ? complex(0.0, 2.0 * N * w0 / speed_of_light)
                          : complex(0.0, 2.0 * N * w0 * std::sqrt(w0 / std::abs(w)) / speed_of_light);
    SidebandOperator b;
    b[sideband_mode(Input::d, w, w0)] += i * s;
    b[sideband_mode(Input::a, w, w0)] += ct;
    b += std::polar(1.0, -W * tau) * G * (i * s * Z.com - ct * Z.diff);
    b *= std::polar(1.0, 2.0 * W * tau);
    // carrier sits at Ω = 0 where every phase is 1
    const complex G0 = complex(0.0, 2.0 * N * w0 / speed_of_light);
    b.carrier = i * s * N + G0 * (i * s * Z.com.carrier - ct * Z.diff.carrier);
    b.carrier_divergent = Z.com.carrier_divergent || Z.diff.carrier_divergent;
    return b;
  };

  SidebandPair r;
  r.Omega = Omega;
  r.plus = build(1.0);
  r.minus = build(-1.0);
  r.dark_port_residual = dark_port_check(w0, tau).residual;
  return r;
}

/// b_± written out in closed form.
inline SidebandPair sideband_io_closed_form(const InterferometerConfig& cfg, double Omega) {
  cfg.validate();
  if (!(Omega > 0.0)) throw DomainError("sideband frequency must be positive (Omega = 0 is a pole)");
  const double tau = cfg.tau();
  const double th = cfg.theta;
  const double s = std::sin(0.5 * th);
  const double ct = std::cos(0.5 * th);
  const double k = kappa(cfg, Omega);
  const double N = carrier_normalization(cfg.power_w, cfg.omega0);
  const complex i{0.0, 1.0};

  auto build = [&](double sigma) {
    const Mode ap = sigma > 0 ? Mode::a_plus : Mode::a_minus;
    const Mode dp = sigma > 0 ? Mode::d_plus : Mode::d_minus;
    const Mode am = sigma > 0 ? Mode::a_minus_dag : Mode::a_plus_dag;
    const Mode dm = sigma > 0 ? Mode::d_minus_dag : Mode::d_plus_dag;
    SidebandOperator b;
    const complex ph = std::polar(1.0, 2.0 * sigma * Omega * tau);
    b[dp] = ph * (i * s + 0.5 * k * std::sin(th));
    b[dm] = ph * 0.5 * k * std::sin(th);
    b[ap] = ph * (ct + 0.5 * k * i * std::cos(th));
    b[am] = ph * 0.5 * k * i * std::cos(th);
    b.carrier = s * (i + k * ct) * N;
    b.carrier_divergent = true;
    const complex ch = -i * std::sqrt(k) * ct * std::polar(1.0, sigma * Omega * tau);
    (sigma > 0 ? b.strain_plus : b.strain_minus) = ch;
    return b;
  };
  SidebandPair r;
  r.Omega = Omega;
  r.plus = build(1.0);
  r.minus = build(-1.0);
  r.dark_port_residual = dark_port_check(cfg.omega0, tau).residual;
  return r;
}

struct TwoPhotonPair {
  double Omega = 0.0;
  QuadratureOperator b1;  // amplitude quadrature
  QuadratureOperator b2;  // phase quadrature
  double kappa = 0.0;
  double h_sql = 0.0;
};

inline TwoPhotonPair two_photon(const SidebandPair& p, const InterferometerConfig& cfg,
                                double tol = 1e-12) {
  const double r = 1.0 / std::sqrt(2.0);
  const auto minus_dag = p.minus.dagger();
  const double scale = std::max(1.0, max_deviation(p.plus, SidebandOperator{}));
  TwoPhotonPair t;
  t.Omega = p.Omega;
  t.b1 = to_two_photon(complex{r} * (p.plus + minus_dag), tol * scale);
  t.b2 = to_two_photon(complex(0.0, -r) * (p.plus - minus_dag), tol * scale);
  t.kappa = kappa(cfg, p.Omega);
  t.h_sql = h_sql(cfg, p.Omega);
  return t;
}

/// b₁, b₂ in closed form.
inline TwoPhotonPair two_photon_closed_form(const InterferometerConfig& cfg, double Omega) {
  cfg.validate();
  const double th = cfg.theta;
  const double s = std::sin(0.5 * th);
  const double ct = std::cos(0.5 * th);
  const double k = kappa(cfg, Omega);
  const double N = carrier_normalization(cfg.power_w, cfg.omega0);
  const complex ph = std::polar(1.0, 2.0 * Omega * cfg.tau());
  TwoPhotonPair t;
  t.Omega = Omega;
  t.kappa = k;
  t.h_sql = h_sql(cfg, Omega);
  t.b1.a1 = ph * ct;
  t.b1.d1 = ph * k * std::sin(th);
  t.b1.d2 = -ph * s;
  t.b1.carrier = std::sin(th) * k * N / std::sqrt(2.0);
  t.b1.carrier_divergent = true;
  t.b2.a1 = ph * k * std::cos(th);
  t.b2.a2 = ph * ct;
  t.b2.d1 = ph * s;
  t.b2.carrier = std::sqrt(2.0) * s * N;
  t.b2.strain = -std::sqrt(2.0 * k) * std::polar(ct, Omega * cfg.tau());
  return t;
}

/// b₁ = e^{2iΩτ}â₁, b₂ = e^{2iΩτ}(â₂ + κâ₁) − e^{iΩτ}√(2κ) h/h_SQL.
inline TwoPhotonPair theta_zero_relation(const InterferometerConfig& cfg, double Omega) {
  const double k = kappa(cfg, Omega);
  const complex ph = std::polar(1.0, 2.0 * Omega * cfg.tau());
  TwoPhotonPair t;
  t.Omega = Omega;
  t.kappa = k;
  t.h_sql = h_sql(cfg, Omega);
  t.b1.a1 = ph;
  t.b2.a1 = ph * k;
  t.b2.a2 = ph;
  t.b2.strain = -std::sqrt(2.0 * k) * std::polar(1.0, Omega * cfg.tau());
  return t;
}

/// Largest absolute coefficient deviation between the pipeline at θ = 0 and
/// the closed θ = 0 relation.
inline double check_theta_zero(InterferometerConfig cfg, std::span<const double> omegas) {
  cfg.theta = 0.0;
  double worst = 0.0;
  for (double W : omegas) {
    const auto got = two_photon(sideband_io(cfg, W), cfg);
    const auto want = theta_zero_relation(cfg, W);
    worst = std::max({worst, max_deviation(got.b1, want.b1), max_deviation(got.b2, want.b2)});
  }
  return worst;
}

/// det of the (a₁,a₂) block; unit modulus at θ = 0.
inline complex transfer_determinant_a(const TwoPhotonPair& t) {
  return t.b1.a1 * t.b2.a2 - t.b1.a2 * t.b2.a1;
}

/// det(a-block) + det(d-block) with the common phase e^{4iΩτ} removed.
/// Equals 1 for a symplectic two-port map of (a, d) into (b₁, b₂).
inline complex symplectic_determinant(const TwoPhotonPair& t, double tau) {
  const complex strip = std::polar(1.0, -4.0 * t.Omega * tau);
  const complex da = t.b1.a1 * t.b2.a2 - t.b1.a2 * t.b2.a1;
  const complex dd = t.b1.d1 * t.b2.d2 - t.b1.d2 * t.b2.d1;
  return strip * (da + dd);
}

enum class Readout { b1, b2 };

/// Strain-referred spectral density h_SQL² Σ|vacuum coefficient|² / |c_h|².
inline double noise_spectrum(const TwoPhotonPair& t, Readout channel = Readout::b2) {
  const auto& q = channel == Readout::b2 ? t.b2 : t.b1;
  if (std::abs(q.strain) == 0.0)
    throw DomainError(std::string("zero signal transfer in channel ") +
                      (channel == Readout::b2 ? "b2" : "b1") + ": strain spectrum undefined");
  double sum = 0.0;
  for (complex c : q.vacuum()) sum += std::norm(c);
  return t.h_sql * t.h_sql * sum / std::norm(q.strain);
}

}  // namespace michelson
