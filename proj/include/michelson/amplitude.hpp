#pragma once

#include <michelson/errors.hpp>
#include <michelson/grid.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace michelson {

/// α(ω) = 2πN δ(ω − ω₀). Never sampled; consumers collapse the δ analytically.
struct Monochromatic {
  double N = 0.0;       // √(photons/s)
  double omega0 = 0.0;  // rad/s
};

/// α(ω) = peak · exp(−(ω − center)² / (2 width²)) for ω > 0.
struct GaussianPulse {
  double peak = 1.0;
  double center = 0.0;
  double width = 0.0;
};

/// Real samples on an optical grid, linearly interpolated, zero outside.
struct Tabulated {
  FrequencyGrid grid;
  std::vector<double> samples;
};

/// Real coherent amplitude α(ω) of the source.
class CoherentAmplitude {
 public:
  using Variant = std::variant<Monochromatic, GaussianPulse, Tabulated>;

  CoherentAmplitude(Monochromatic m) : v_(m) {
    if (!(m.omega0 > 0.0)) throw ConfigError("amplitude.omega0", "must be positive");
    if (!std::isfinite(m.N)) throw ConfigError("amplitude.N", "must be finite");
  }
  CoherentAmplitude(GaussianPulse g) : v_(g) {
    if (!(g.width > 0.0)) throw ConfigError("amplitude.width", "must be positive");
    if (!(g.center > 0.0)) throw ConfigError("amplitude.center", "must be positive");
    if (!std::isfinite(g.peak)) throw ConfigError("amplitude.peak", "must be finite");
  }
  CoherentAmplitude(Tabulated t) : v_(std::move(t)) {
    const auto& tab = std::get<Tabulated>(v_);
    if (tab.grid.kind() != GridKind::optical)
      throw GridError("tabulated amplitude needs an optical grid");
    if (tab.samples.size() != tab.grid.size())
      throw GridError("tabulated amplitude sample count does not match grid");
    for (double s : tab.samples)
      if (!std::isfinite(s)) throw ConfigError("amplitude.samples", "must be finite");
  }

  static CoherentAmplitude zero() { return GaussianPulse{0.0, 1.0, 1.0}; }

  const Variant& variant() const noexcept { return v_; }
  bool is_monochromatic() const noexcept { return std::holds_alternative<Monochromatic>(v_); }
  const Monochromatic& monochromatic() const {
    if (!is_monochromatic()) throw DomainError("amplitude is not monochromatic");
    return std::get<Monochromatic>(v_);
  }

  /// Pointwise value; for Monochromatic this is the regular part, i.e. zero.
  double operator()(double omega) const {
    if (!(omega > 0.0)) return 0.0;
    return std::visit(
        [omega](const auto& a) -> double {
          using T = std::decay_t<decltype(a)>;
          if constexpr (std::is_same_v<T, Monochromatic>) {
            return 0.0;
          } else if constexpr (std::is_same_v<T, GaussianPulse>) {
            const double u = (omega - a.center) / a.width;
            return a.peak * std::exp(-0.5 * u * u);
          } else {
            return interpolate(a.grid, a.samples, omega);
          }
        },
        v_);
  }

  /// D_c(ω) = α(ω)Θ(ω) + α(−ω)Θ(−ω) for real α.
  double classical(double omega) const { return (*this)(std::abs(omega)); }

  /// Interval outside of which |α| is negligible.
  std::pair<double, double> support(double widths = 12.0) const {
    return std::visit(
        [widths](const auto& a) -> std::pair<double, double> {
          using T = std::decay_t<decltype(a)>;
          if constexpr (std::is_same_v<T, Monochromatic>) {
            return {a.omega0, a.omega0};
          } else if constexpr (std::is_same_v<T, GaussianPulse>) {
            return {std::max(0.0, a.center - widths * a.width), a.center + widths * a.width};
          } else {
            return {a.grid.front(), a.grid.back()};
          }
        },
        v_);
  }

  /// Bound on ∫ x^power |α(x)| dx over the part of (0,∞) outside support(widths).
  double tail_bound(double power, double widths = 12.0) const {
    if (const auto* g = std::get_if<GaussianPulse>(&v_)) {
      const double hi = g->center + widths * g->width;
      // Mills ratio for the upper tail; the x^power growth is absorbed by the factor 2.
      const double upper = 2.0 * std::pow(hi, power) * std::abs(g->peak) * g->width / widths *
                           std::exp(-0.5 * widths * widths);
      const double lo = g->center - widths * g->width;
      double lower = 0.0;
      if (lo > 0.0) {
        const double edge = std::abs(g->peak) * std::exp(-0.5 * widths * widths);
        lower = edge * std::pow(lo, power + 1.0) / (power + 1.0);
      }
      return upper + lower;
    }
    return 0.0;
  }

  /// Amplitude multiplied by a real scalar.
  CoherentAmplitude scaled(double c) const {
    return std::visit(
        [c](const auto& a) -> CoherentAmplitude {
          using T = std::decay_t<decltype(a)>;
          if constexpr (std::is_same_v<T, Monochromatic>) {
            return Monochromatic{a.N * c, a.omega0};
          } else if constexpr (std::is_same_v<T, GaussianPulse>) {
            return GaussianPulse{a.peak * c, a.center, a.width};
          } else {
            auto s = a.samples;
            for (auto& x : s) x *= c;
            return Tabulated{a.grid, std::move(s)};
          }
        },
        v_);
  }

  std::string describe() const {
    return std::visit(
        [](const auto& a) -> std::string {
          using T = std::decay_t<decltype(a)>;
          if constexpr (std::is_same_v<T, Monochromatic>) return "monochromatic";
          else if constexpr (std::is_same_v<T, GaussianPulse>) return "gaussian";
          else return "tabulated";
        },
        v_);
  }

 private:
  Variant v_;
};

}  // namespace michelson
