#pragma once

// Regime pipelines behind the command-line front end.

#include <michelson/cli/run_config.hpp>
#include <michelson/cli/table.hpp>
#include <michelson/conventional.hpp>
#include <michelson/validation.hpp>
#include <michelson/weakvalue.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <limits>
#include <string>
#include <vector>

namespace michelson::cli {

using detail::format_double;

/// Evaluates fn(i) for i < n on up to `threads` workers; results keep index order.
template <class T>
std::vector<T> parallel_map(std::size_t n, unsigned threads, const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(n);
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads, n));
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < n; i += workers) out[i] = fn(i);
    }));
  }
  for (auto& j : jobs) j.get();
  return out;
}

namespace detail {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

inline InterferometerConfig resolved_interferometer(const RunConfig& cfg) {
  auto ifo = cfg.interferometer;
  if (cfg.tune_arm_length) ifo.arm_length_m = tune_arm_length(ifo.arm_length_m, ifo.omega0);
  return ifo;
}

inline double vacuum_deviation(QuadratureOperator x, QuadratureOperator y) {
  x.carrier = y.carrier = {};
  return max_deviation(x, y);
}

}  // namespace detail

inline Table run_conventional(const RunConfig& cfg) {
  cfg.validate();
  const auto ifo = detail::resolved_interferometer(cfg);
  const bool theta_axis = cfg.sweep.axis == "theta_rad";
  std::vector<double> xs = cfg.sweep.axis.empty() ? std::vector<double>{cfg.frequency_hz} : cfg.sweep.values();

  Table t;
  t.columns = {"frequency_hz", "omega_rad_s", "theta_rad",  "kappa",      "h_sql",
               "S_h",          "S_h_over_hsql2", "b2_a1_abs", "b2_a2_abs", "b2_d1_abs",
               "b2_d2_abs",    "b2_h_abs",    "closed_form_deviation", "status"};
  t.rows = parallel_map<std::vector<Cell>>(xs.size(), cfg.threads, [&](std::size_t i) {
    auto c = ifo;
    const double f = theta_axis ? cfg.frequency_hz : xs[i];
    if (theta_axis) c.theta = xs[i];
    const double W = two_pi * f;
    const auto tp = two_photon(sideband_io(c, W), c);
    const auto closed = c.theta == 0.0 ? theta_zero_relation(c, W) : two_photon_closed_form(c, W);
    double sh = detail::nan;
    std::string status = "ok";
    try {
      sh = noise_spectrum(tp);
    } catch (const DomainError&) {
      status = "zero signal transfer in b2";
    }
    return std::vector<Cell>{f,
                             W,
                             c.theta,
                             tp.kappa,
                             tp.h_sql,
                             sh,
                             sh / (tp.h_sql * tp.h_sql),
                             std::abs(tp.b2.a1),
                             std::abs(tp.b2.a2),
                             std::abs(tp.b2.d1),
                             std::abs(tp.b2.d2),
                             std::abs(tp.b2.strain),
                             detail::vacuum_deviation(tp.b2, closed.b2) +
                                 detail::vacuum_deviation(tp.b1, closed.b1),
                             status};
  });

  const auto dp = dark_port_check(ifo.omega0, ifo.tau());
  const double f_unity = std::sqrt(8.0 * ifo.omega0 * ifo.power_w /
                                   (ifo.mass_kg * speed_of_light * speed_of_light)) / two_pi;
  t.metadata = {{"arm_length_used_m", format_double(ifo.arm_length_m)},
                {"dark_port_n", std::to_string(dp.n)},
                {"dark_port_residual_rad", format_double(dp.residual)},
                {"kappa_unity_frequency_hz", format_double(f_unity)},
                {"readout", "b2"}};
  if (!dp.exact && !dp.within_rounding)
    t.warnings.push_back("arm length is not dark-port tuned; residual phase " + format_double(dp.residual) +
                         " rad is reported, not applied");
  return t;
}

inline Table run_weakvalue(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.amplitude.kind != "gaussian")
    throw ConfigError("amplitude.kind", "the weak-value regime needs a broadband (gaussian) amplitude");
  const auto alpha = cfg.amplitude.build(cfg.interferometer);
  const double tau = cfg.weak.arm_length_m / speed_of_light;
  const auto& axis = cfg.sweep.axis;
  std::vector<double> xs = axis.empty() ? std::vector<double>{cfg.weak.theta_rad} : cfg.sweep.values();

  const auto moments = numerics::moment_integrals(alpha, tau);
  const double omega0_bar = mean_frequency_of_square(alpha, {});

  Table t;
  t.columns = {"theta_rad",   "z_com_m_s",  "z_diff_m_s", "weak_value_im",       "J",
               "Ic_minus",    "Ic_plus",    "Is_minus",   "Is_plus",             "Is_3_2",
               "shift_formula_rad_s", "shift_direct_rad_s", "relative_difference",
               "linearization_ratio", "status"};
  t.rows = parallel_map<std::vector<Cell>>(xs.size(), cfg.threads, [&](std::size_t i) {
    double th = cfg.weak.theta_rad, zc = cfg.weak.z_com_m_s, zd = cfg.weak.z_diff_m_s;
    if (axis == "theta_rad") th = xs[i];
    if (axis == "z_com_m_s") zc = xs[i];
    if (axis == "z_diff_m_s") zd = xs[i];
    double aw = detail::nan, formula = detail::nan, direct = detail::nan, rel = detail::nan, ratio = detail::nan;
    std::string status = "ok";
    try {
      aw = weak_value(th).imag();
      formula = frequency_expectation_shift(moments, omega0_bar, th, zc, zd);
      const auto p = photon_number_spectrum(alpha, th, tau, zc, zd);
      ratio = p.linearization_ratio;
      direct = direct_frequency_shift(p);
      rel = direct != 0.0 ? std::abs(formula - direct) / std::abs(direct) : (formula == 0.0 ? 0.0 : detail::nan);
    } catch (const LinearizationError& e) {
      ratio = e.ratio();
      status = "linearization invalid";
    } catch (const DomainError&) {
      status = "weak value undefined";
    }
    return std::vector<Cell>{th, zc, zd, aw, moments.J, moments.Ic_minus, moments.Ic_plus,
                             moments.Is_minus, moments.Is_plus, moments.Is_3_2, formula, direct, rel, ratio,
                             status};
  });

  t.metadata = {{"tau_s", format_double(tau)},
                {"omega0_bar_rad_s", format_double(omega0_bar)},
                {"moment_max_rel_error", format_double(moments.max_rel_error)},
                {"amplitude_parameters", "artifact defaults unless overridden"}};
  if (axis == "theta_rad") {
    std::vector<double> th, sh;
    for (const auto& r : t.rows) {
      const double x = std::get<double>(r[0]);
      const double y = std::get<double>(r[10]);
      if (std::get<std::string>(r[14]) == "ok" && x > 0.0 && y != 0.0 && std::isfinite(y)) {
        th.push_back(x);
        sh.push_back(y);
      }
    }
    if (th.size() >= 2) t.metadata.push_back({"loglog_slope", format_double(validation::loglog_slope(th, sh))});
  }
  for (const auto& r : t.rows)
    if (std::get<std::string>(r[14]) != "ok")
      t.warnings.push_back("theta = " + format_double(std::get<double>(r[0])) + ": " +
                           std::get<std::string>(r[14]));
  return t;
}

/// Determinism: two identical conventional sweeps serialize to the same bytes.
inline validation::CheckResult check_determinism(const RunConfig& base) {
  RunConfig c = base;
  c.regime = Regime::conventional;
  c.sweep = {"frequency_hz", 10.0, 1e4, 64, Spacing::log};
  validation::CheckResult r{10, "CLI determinism", 0.0, 0.0, false, 0.0, {}};
  std::string first;
  for (Format f : {Format::csv, Format::json}) {
    c.format = f;
    const auto a = serialize(run_conventional(c), c);
    c.threads = c.threads == 1 ? 4 : 1;
    const auto b = serialize(run_conventional(c), c);
    if (a != b) r.measured += 1.0;
  }
  r.passed = r.measured == 0.0;
  r.detail = "byte comparison of repeated csv and json runs with different thread counts";
  return r;
}

inline Table run_validate(const RunConfig& cfg, std::vector<validation::CheckResult>* out = nullptr) {
  cfg.validate();
  validation::PulseDefaults pulse;
  pulse.center = cfg.amplitude.center_rad_s;
  pulse.width_fraction = cfg.amplitude.width_rad_s / cfg.amplitude.center_rad_s;
  pulse.peak = cfg.amplitude.peak;
  pulse.arm_length_m = cfg.weak.arm_length_m;
  auto checks = validation::run_all(cfg.interferometer, pulse);
  checks.push_back(check_determinism(cfg));

  Table t;
  t.columns = {"id", "check", "measured", "threshold", "result", "detail"};
  for (const auto& c : checks)
    t.rows.push_back({static_cast<double>(c.id), c.name, c.measured, c.threshold,
                      std::string(c.passed ? "PASS" : "FAIL"), c.detail});
  if (out) *out = std::move(checks);
  return t;
}

}  // namespace michelson::cli
