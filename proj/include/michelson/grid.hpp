#pragma once

#include <michelson/errors.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace michelson {

using complex = std::complex<double>;

/// Optical grids index absolute frequencies (ω ≥ 0); sideband grids carry a
/// signed offset Ω and may straddle zero.
enum class GridKind { optical, sideband };

/// Strictly increasing, finite set of angular frequencies in rad/s.
class FrequencyGrid {
 public:
  FrequencyGrid(std::vector<double> points, GridKind kind)
      : points_(std::move(points)), kind_(kind) {
    if (points_.empty()) throw GridError("frequency grid must not be empty");
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (!std::isfinite(points_[i]))
        throw GridError("frequency grid contains a non-finite point");
      if (i > 0 && !(points_[i] > points_[i - 1]))
        throw GridError("frequency grid must be strictly increasing");
    }
    if (kind_ == GridKind::optical && points_.front() < 0.0)
      throw GridError("optical grid contains a negative frequency");
  }

  static FrequencyGrid linear(double lo, double hi, std::size_t n, GridKind kind) {
    if (n < 2) throw GridError("linear grid needs at least two points");
    std::vector<double> p(n);
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) p[i] = lo + step * static_cast<double>(i);
    p.back() = hi;
    return FrequencyGrid(std::move(p), kind);
  }

  static FrequencyGrid logarithmic(double lo, double hi, std::size_t n, GridKind kind) {
    if (n < 2) throw GridError("logarithmic grid needs at least two points");
    if (!(lo > 0.0) || !(hi > lo)) throw GridError("logarithmic grid needs 0 < lo < hi");
    std::vector<double> p(n);
    const double ratio = std::log(hi / lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) p[i] = lo * std::exp(ratio * static_cast<double>(i));
    p.front() = lo;
    p.back() = hi;
    return FrequencyGrid(std::move(p), kind);
  }

  /// Points k·step for k = -half_count..half_count, aligned on multiples of step.
  static FrequencyGrid centered(double step, std::size_t half_count) {
    if (!(step > 0.0)) throw GridError("centered grid needs a positive step");
    std::vector<double> p(2 * half_count + 1);
    const auto h = static_cast<long long>(half_count);
    for (long long k = -h; k <= h; ++k)
      p[static_cast<std::size_t>(k + h)] = step * static_cast<double>(k);
    return FrequencyGrid(std::move(p), GridKind::sideband);
  }

  std::span<const double> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  double operator[](std::size_t i) const { return points_[i]; }
  double front() const { return points_.front(); }
  double back() const { return points_.back(); }
  GridKind kind() const noexcept { return kind_; }

  bool operator==(const FrequencyGrid& other) const {
    return kind_ == other.kind_ && points_ == other.points_;
  }

  /// Uniform spacing, if every gap equals the mean gap within rel_tol.
  std::optional<double> uniform_step(double rel_tol = 1e-9) const {
    if (points_.size() < 2) return std::nullopt;
    const double step = (points_.back() - points_.front()) / static_cast<double>(points_.size() - 1);
    for (std::size_t i = 1; i < points_.size(); ++i)
      if (std::abs(points_[i] - points_[i - 1] - step) > rel_tol * step) return std::nullopt;
    return step;
  }

  std::optional<std::size_t> index_of(double omega, double rel_tol = 1e-12) const {
    auto it = std::lower_bound(points_.begin(), points_.end(), omega);
    const double scale = std::max(std::abs(omega), 1.0);
    for (auto cand : {it, it == points_.begin() ? it : it - 1}) {
      if (cand != points_.end() && std::abs(*cand - omega) <= rel_tol * scale)
        return static_cast<std::size_t>(cand - points_.begin());
    }
    return std::nullopt;
  }

  /// Trapezoid weights for integrating samples over the grid.
  std::vector<double> trapezoid_weights() const {
    std::vector<double> w(points_.size(), 0.0);
    for (std::size_t i = 1; i < points_.size(); ++i) {
      const double h = points_[i] - points_[i - 1];
      w[i - 1] += 0.5 * h;
      w[i] += 0.5 * h;
    }
    return w;
  }

 private:
  std::vector<double> points_;
  GridKind kind_;
};

/// Linear interpolation of samples on a grid; zero outside the grid.
template <class T>
T interpolate(const FrequencyGrid& grid, const std::vector<T>& samples, double omega) {
  if (samples.size() != grid.size()) throw GridError("sample count does not match grid");
  const auto pts = grid.points();
  if (omega < pts.front() || omega > pts.back()) return T{};
  if (pts.size() == 1) return samples[0];
  auto it = std::upper_bound(pts.begin(), pts.end(), omega);
  if (it == pts.end()) return samples.back();
  const auto hi = static_cast<std::size_t>(it - pts.begin());
  const auto lo = hi - 1;
  const double t = (omega - pts[lo]) / (pts[hi] - pts[lo]);
  return samples[lo] * (1.0 - t) + samples[hi] * t;
}

/// A symbolic spectral line: weight · 2π δ(ω − omega).
struct SpectralLine {
  double omega = 0.0;
  complex weight{};
};

}  // namespace michelson
