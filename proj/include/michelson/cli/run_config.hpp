#pragma once

// Run configuration: a flat "section.key = value" text format.

#include <michelson/amplitude.hpp>
#include <michelson/config.hpp>
#include <michelson/constants.hpp>
#include <michelson/errors.hpp>

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <cstdio>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace michelson::cli {

enum class Regime { conventional, weakvalue, validate };
enum class Format { csv, json };
enum class Spacing { linear, log };

struct AmplitudeSpec {
  std::string kind = "gaussian";  // gaussian | monochromatic
  double center_rad_s = 2.35e15;
  double width_rad_s = 0.05 * 2.35e15;
  double peak = 1.0;

  CoherentAmplitude build(const InterferometerConfig& ifo) const;
};

struct WeakSpec {
  double arm_length_m = 2.5e-6;
  double theta_rad = 0.1;
  double z_com_m_s = 0.0;
  double z_diff_m_s = 1e-30;
};

struct SweepSpec {
  std::string axis;  // empty: single point
  double min = 0.0;
  double max = 0.0;
  std::size_t points = 0;
  Spacing spacing = Spacing::log;

  std::vector<double> values() const {
    std::vector<double> v(points);
    for (std::size_t i = 0; i < points; ++i) {
      const double t = points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(points - 1);
      v[i] = spacing == Spacing::log ? min * std::pow(max / min, t) : min + (max - min) * t;
    }
    if (points > 1) v.back() = max;
    return v;
  }
};

struct RunConfig {
  Regime regime = Regime::conventional;
  InterferometerConfig interferometer;
  bool tune_arm_length = true;
  double frequency_hz = 100.0;  // single point when no sweep is set
  AmplitudeSpec amplitude;
  WeakSpec weak;
  SweepSpec sweep;
  std::string output_path;
  Format format = Format::csv;
  unsigned threads = 4;

  void set(const std::string& key, const std::string& value);
  void validate() const;
  /// Every key with its resolved value, in a fixed order.
  std::vector<std::pair<std::string, std::string>> resolved() const;
};

inline const char* regime_name(Regime r) {
  switch (r) {
    case Regime::conventional: return "conventional";
    case Regime::weakvalue: return "weakvalue";
    case Regime::validate: return "validate";
  }
  return "";
}

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& key, const std::string& v) {
  errno = 0;
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE || !std::isfinite(x))
    throw ConfigError(key, "expected a finite number, got '" + v + "'");
  return x;
}

inline std::size_t parse_count(const std::string& key, const std::string& v) {
  const double x = parse_double(key, v);
  if (x < 0 || x != std::floor(x) || x > 1e7) throw ConfigError(key, "expected a non-negative integer");
  return static_cast<std::size_t>(x);
}

inline bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(key, "expected true or false, got '" + v + "'");
}

inline std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace detail

inline CoherentAmplitude AmplitudeSpec::build(const InterferometerConfig& ifo) const {
  if (kind == "monochromatic") {
    return Monochromatic{std::sqrt(ifo.power_w / (hbar * ifo.omega0)), ifo.omega0};
  }
  return GaussianPulse{peak, center_rad_s, width_rad_s};
}

inline void RunConfig::set(const std::string& raw_key, const std::string& raw_value) {
  const std::string key = detail::trim(raw_key);
  const std::string v = detail::trim(raw_value);
  auto num = [&] { return detail::parse_double(key, v); };
  auto& ifo = interferometer;

  if (key == "regime") {
    if (v == "conventional") regime = Regime::conventional;
    else if (v == "weakvalue") regime = Regime::weakvalue;
    else if (v == "validate") regime = Regime::validate;
    else throw ConfigError(key, "unknown regime '" + v + "'");
  } else if (key == "interferometer.mass_kg") ifo.mass_kg = num();
  else if (key == "interferometer.arm_length_m") ifo.arm_length_m = num();
  else if (key == "interferometer.theta_rad") ifo.theta = num();
  else if (key == "interferometer.power_w") ifo.power_w = num();
  else if (key == "interferometer.omega0_rad_s") ifo.omega0 = num();
  else if (key == "interferometer.beam_area_m2") ifo.beam_area_m2 = num();
  else if (key == "interferometer.tune_arm_length") tune_arm_length = detail::parse_bool(key, v);
  else if (key == "conventional.frequency_hz") frequency_hz = num();
  else if (key == "amplitude.kind") {
    if (v != "gaussian" && v != "monochromatic") throw ConfigError(key, "unknown amplitude '" + v + "'");
    amplitude.kind = v;
  } else if (key == "amplitude.center_rad_s") amplitude.center_rad_s = num();
  else if (key == "amplitude.width_rad_s") amplitude.width_rad_s = num();
  else if (key == "amplitude.peak") amplitude.peak = num();
  else if (key == "weak.arm_length_m") weak.arm_length_m = num();
  else if (key == "weak.theta_rad") weak.theta_rad = num();
  else if (key == "weak.z_com_m_s") weak.z_com_m_s = num();
  else if (key == "weak.z_diff_m_s") weak.z_diff_m_s = num();
  else if (key == "sweep.axis") sweep.axis = v;
  else if (key == "sweep.min") sweep.min = num();
  else if (key == "sweep.max") sweep.max = num();
  else if (key == "sweep.points") sweep.points = detail::parse_count(key, v);
  else if (key == "sweep.spacing") {
    if (v == "log") sweep.spacing = Spacing::log;
    else if (v == "linear") sweep.spacing = Spacing::linear;
    else throw ConfigError(key, "expected log or linear");
  } else if (key == "output.path") output_path = v;
  else if (key == "output.format") {
    if (v == "csv") format = Format::csv;
    else if (v == "json") format = Format::json;
    else throw ConfigError(key, "expected csv or json");
  } else if (key == "run.threads") {
    threads = static_cast<unsigned>(std::max<std::size_t>(1, detail::parse_count(key, v)));
  } else {
    throw ConfigError(key, "unknown key");
  }
}

inline void RunConfig::validate() const {
  interferometer.validate();
  if (!(frequency_hz > 0.0)) throw ConfigError("conventional.frequency_hz", "must be positive");
  if (amplitude.kind == "gaussian") {
    if (!(amplitude.center_rad_s > 0.0)) throw ConfigError("amplitude.center_rad_s", "must be positive");
    if (!(amplitude.width_rad_s > 0.0)) throw ConfigError("amplitude.width_rad_s", "must be positive");
  }
  if (!(weak.arm_length_m > 0.0)) throw ConfigError("weak.arm_length_m", "must be positive");

  if (sweep.axis.empty()) {
    if (sweep.points != 0) throw ConfigError("sweep.axis", "points given without an axis");
    return;
  }
  const std::vector<std::string> allowed =
      regime == Regime::conventional ? std::vector<std::string>{"frequency_hz", "theta_rad"}
      : regime == Regime::weakvalue  ? std::vector<std::string>{"theta_rad", "z_com_m_s", "z_diff_m_s"}
                                     : std::vector<std::string>{};
  if (std::find(allowed.begin(), allowed.end(), sweep.axis) == allowed.end())
    throw ConfigError("sweep.axis", "'" + sweep.axis + "' is not a sweep axis of regime " +
                                        regime_name(regime));
  if (sweep.points < 2) throw ConfigError("sweep.points", "a sweep needs at least two points");
  if (!std::isfinite(sweep.min) || !std::isfinite(sweep.max) || !(sweep.max > sweep.min))
    throw ConfigError("sweep.max", "range must be finite with max > min");
  if (sweep.spacing == Spacing::log && !(sweep.min > 0.0))
    throw ConfigError("sweep.min", "log spacing needs a positive range");
  if (sweep.axis == "frequency_hz" && !(sweep.min > 0.0))
    throw ConfigError("sweep.min", "frequency sweep must exclude Omega <= 0");
}

inline std::vector<std::pair<std::string, std::string>> RunConfig::resolved() const {
  using detail::format_double;
  const auto& i = interferometer;
  return {
      {"regime", regime_name(regime)},
      {"interferometer.mass_kg", format_double(i.mass_kg)},
      {"interferometer.arm_length_m", format_double(i.arm_length_m)},
      {"interferometer.theta_rad", format_double(i.theta)},
      {"interferometer.power_w", format_double(i.power_w)},
      {"interferometer.omega0_rad_s", format_double(i.omega0)},
      {"interferometer.beam_area_m2", format_double(i.beam_area_m2)},
      {"interferometer.tune_arm_length", tune_arm_length ? "true" : "false"},
      {"conventional.frequency_hz", format_double(frequency_hz)},
      {"amplitude.kind", amplitude.kind},
      {"amplitude.center_rad_s", format_double(amplitude.center_rad_s)},
      {"amplitude.width_rad_s", format_double(amplitude.width_rad_s)},
      {"amplitude.peak", format_double(amplitude.peak)},
      {"weak.arm_length_m", format_double(weak.arm_length_m)},
      {"weak.theta_rad", format_double(weak.theta_rad)},
      {"weak.z_com_m_s", format_double(weak.z_com_m_s)},
      {"weak.z_diff_m_s", format_double(weak.z_diff_m_s)},
      {"sweep.axis", sweep.axis},
      {"sweep.min", format_double(sweep.min)},
      {"sweep.max", format_double(sweep.max)},
      {"sweep.points", std::to_string(sweep.points)},
      {"sweep.spacing", sweep.spacing == Spacing::log ? "log" : "linear"},
      {"output.format", format == Format::csv ? "csv" : "json"},
  };
}

/// Applies "key = value" lines; '#' starts a comment.
inline void apply_text(RunConfig& cfg, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (detail::trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno), "expected 'key = value'");
    cfg.set(line.substr(0, eq), line.substr(eq + 1));
  }
}

inline void apply_file(RunConfig& cfg, const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("--config", "cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  apply_text(cfg, ss.str());
}

/// "key=value" from the command line.
inline void apply_override(RunConfig& cfg, const std::string& kv) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos) throw ConfigError("--set", "expected key=value, got '" + kv + "'");
  cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
}

}  // namespace michelson::cli
