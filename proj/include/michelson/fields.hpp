#pragma once

// Linearized quadrature fields and the optical train of the Michelson.
//
// Junction sign conventions, in one place:
//   C_x = (D − A)/√2,  C_y = (D + A)/√2,  B = (C'_y − C'_x)/√2.
// The x arm carries the offset phase e^{−iθ/2}, the y arm e^{+iθ/2}, both
// taken with the sign of the frequency so that B(−ω) = B(ω)†.

#include <michelson/amplitude.hpp>
#include <michelson/config.hpp>
#include <michelson/constants.hpp>
#include <michelson/convolution.hpp>
#include <michelson/errors.hpp>
#include <michelson/grid.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <utility>
#include <vector>

namespace michelson {

/// A field operator sampled on a frequency grid.
///
/// At each grid point ω the field is
///   classical(ω) + a(ω)·Â(ω) + d(ω)·D̂_v(ω) + signal(ω)·h
/// with Â(ω) = â(ω)Θ(ω) + â†(−ω)Θ(−ω) and likewise for D̂_v. Classical
/// δ-lines at positive frequencies sit in `lines`; their negative-frequency
/// mirrors are implied by hermiticity.
struct QuadratureField {
  FrequencyGrid grid;
  std::vector<complex> classical;
  std::vector<complex> a;
  std::vector<complex> d;
  std::vector<complex> signal;
  std::vector<SpectralLine> lines;

  explicit QuadratureField(FrequencyGrid g)
      : grid(std::move(g)),
        classical(grid.size()),
        a(grid.size()),
        d(grid.size()),
        signal(grid.size()) {
    if (grid.index_of(0.0, 0.0)) throw GridError("field grid must not contain ω = 0");
  }

  static QuadratureField zero(const FrequencyGrid& g) { return QuadratureField(g); }
  static QuadratureField vacuum_a(const FrequencyGrid& g) {
    QuadratureField f(g);
    std::fill(f.a.begin(), f.a.end(), complex{1.0});
    return f;
  }
  static QuadratureField vacuum_d(const FrequencyGrid& g) {
    QuadratureField f(g);
    std::fill(f.d.begin(), f.d.end(), complex{1.0});
    return f;
  }

  std::size_t size() const { return grid.size(); }

  // Coefficients on the ladder operators at the input frequency |ω|.
  complex vac_a(std::size_t i) const { return grid[i] > 0.0 ? a[i] : complex{}; }
  complex vac_adag(std::size_t i) const { return grid[i] < 0.0 ? a[i] : complex{}; }
  complex vac_d(std::size_t i) const { return grid[i] > 0.0 ? d[i] : complex{}; }
  complex vac_ddag(std::size_t i) const { return grid[i] < 0.0 ? d[i] : complex{}; }

  /// Classical part at any frequency, using hermiticity when the grid is
  /// one-sided; lines are not included.
  complex classical_at(double omega) const {
    if (omega < 0.0 && grid.front() > 0.0) return std::conj(interpolate(grid, classical, -omega));
    return interpolate(grid, classical, omega);
  }
};

namespace detail {

inline void require_same_grid(const QuadratureField& x, const QuadratureField& y) {
  if (!(x.grid == y.grid)) throw GridError("fields live on different grids");
}

inline void add_line(std::vector<SpectralLine>& lines, double omega, complex weight) {
  for (auto& l : lines) {
    if (std::abs(l.omega - omega) <= 1e-12 * std::abs(omega)) {
      l.weight += weight;
      return;
    }
  }
  lines.push_back({omega, weight});
}

}  // namespace detail

/// ca·x + cb·y, slot by slot.
inline QuadratureField combine(complex ca, const QuadratureField& x, complex cb,
                               const QuadratureField& y) {
  detail::require_same_grid(x, y);
  QuadratureField r(x.grid);
  for (std::size_t i = 0; i < x.size(); ++i) {
    r.classical[i] = ca * x.classical[i] + cb * y.classical[i];
    r.a[i] = ca * x.a[i] + cb * y.a[i];
    r.d[i] = ca * x.d[i] + cb * y.d[i];
    r.signal[i] = ca * x.signal[i] + cb * y.signal[i];
  }
  for (const auto& l : x.lines) detail::add_line(r.lines, l.omega, ca * l.weight);
  for (const auto& l : y.lines) detail::add_line(r.lines, l.omega, cb * l.weight);
  return r;
}

/// Largest violation of F(−ω) = F(ω)† over mirrored grid pairs.
inline double hermiticity_defect(const QuadratureField& f) {
  double worst = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f.grid[i] <= 0.0) continue;
    const auto j = f.grid.index_of(-f.grid[i]);
    if (!j) continue;
    for (const auto* v : {&f.classical, &f.a, &f.d, &f.signal})
      worst = std::max(worst, std::abs((*v)[*j] - std::conj((*v)[i])));
  }
  return worst;
}

/// Input junction: (D, A) → (C_x, C_y).
inline std::pair<QuadratureField, QuadratureField> beam_splitter_in(const QuadratureField& D,
                                                                   const QuadratureField& A) {
  const double r = 1.0 / std::sqrt(2.0);
  return {combine(r, D, -r, A), combine(r, D, r, A)};
}

/// Output junction: (C'_x, C'_y) → B.
inline QuadratureField beam_splitter_out(const QuadratureField& Cx, const QuadratureField& Cy) {
  const double r = 1.0 / std::sqrt(2.0);
  return combine(-r, Cx, r, Cy);
}

/// Classical end-mirror displacement spectrum Z(Ω), as a sum of
///   static_z · 2πδ(Ω)          (a constant offset, metres)
///   flat_z                     (a spectrum flat in Ω, metre·seconds)
///   sampled(Ω)                 (tabulated on a sideband grid, zero outside)
struct MirrorMotion {
  complex static_z{};
  complex flat_z{};
  std::optional<numerics::GriddedFunction> sampled;

  static MirrorMotion constant(complex z) { return {z, complex{}, std::nullopt}; }
  static MirrorMotion flat(complex z) { return {complex{}, z, std::nullopt}; }

  bool is_zero() const {
    if (static_z != complex{} || flat_z != complex{}) return false;
    if (!sampled) return true;
    return std::all_of(sampled->values.begin(), sampled->values.end(),
                       [](complex v) { return v == complex{}; });
  }

  complex sampled_at(double omega) const {
    return sampled ? interpolate(sampled->grid, sampled->values, omega) : complex{};
  }

  friend MirrorMotion scaled_sum(double ca, const MirrorMotion& x, double cb, const MirrorMotion& y) {
    MirrorMotion r{ca * x.static_z + cb * y.static_z, ca * x.flat_z + cb * y.flat_z, std::nullopt};
    if (x.sampled && y.sampled) {
      if (!(x.sampled->grid == y.sampled->grid)) throw GridError("motion spectra on different grids");
      std::vector<complex> v(x.sampled->values.size());
      for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = ca * x.sampled->values[i] + cb * y.sampled->values[i];
      r.sampled.emplace(x.sampled->grid, std::move(v));
    } else if (x.sampled) {
      auto v = x.sampled->values;
      for (auto& e : v) e *= ca;
      r.sampled.emplace(x.sampled->grid, std::move(v));
    } else if (y.sampled) {
      auto v = y.sampled->values;
      for (auto& e : v) e *= cb;
      r.sampled.emplace(y.sampled->grid, std::move(v));
    }
    return r;
  }

  /// Largest violation of Z(−Ω) = Z(Ω)* on the sampled part.
  double reality_defect() const {
    if (!sampled) return 0.0;
    double worst = 0.0;
    const auto& g = sampled->grid;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const auto j = g.index_of(-g[i]);
      if (j) worst = std::max(worst, std::abs(sampled->values[*j] - std::conj(sampled->values[i])));
    }
    return worst;
  }
};

struct MirrorMotionSpec {
  MirrorMotion com;
  MirrorMotion diff;
};

enum class Arm { x, y };

/// Which parts of the field the first-order mirror term acts on.
enum class MotionScope { all, classical_only };

namespace detail {

inline complex arm_phase(double omega, double tau, Arm arm, double theta) {
  const double sgn = omega > 0.0 ? 1.0 : -1.0;
  const double offset = (arm == Arm::x ? -0.5 : 0.5) * sgn * theta;
  return std::polar(1.0, offset + 2.0 * omega * tau);
}

// ∫ du e^{iuτ} √|u| u C(u) over the whole real line, classical part and lines.
inline complex flat_motion_moment(const QuadratureField& C, double tau) {
  const auto w = C.grid.trapezoid_weights();
  complex pos{}, neg{};
  bool has_negative = false;
  for (std::size_t i = 0; i < C.size(); ++i) {
    const double u = C.grid[i];
    const complex k = std::polar(std::sqrt(std::abs(u)) * u, u * tau);
    // Trapezoid weights straddling ω = 0 span the gap; the integrand vanishes there.
    if (u > 0.0) pos += w[i] * k * C.classical[i];
    else {
      neg += w[i] * k * C.classical[i];
      has_negative = true;
    }
  }
  if (!has_negative) neg = -std::conj(pos);
  complex lines{};
  for (const auto& l : C.lines) {
    const double u = l.omega;
    const complex k = std::polar(std::sqrt(u) * u, u * tau);
    lines += two_pi * (k * l.weight - std::conj(k * l.weight));
  }
  return pos + neg + lines;
}

}  // namespace detail

/// Retarded propagation down one arm and back, to first order in Z.
///
/// C'(ω) = φ(ω)[C(ω) + (2i/(c√|ω|)) ∫dΩ/2π e^{−iΩτ} √|ω−Ω| (ω−Ω) C(ω−Ω) Z(Ω)]
/// with φ(ω) = e^{∓iθ/2} e^{2iωτ}. The static part of Z acts on every slot;
/// flat and sampled parts act on the classical part and lines only.
inline QuadratureField arm_propagate(const QuadratureField& C, double tau, Arm arm, double theta,
                                     const MirrorMotion& Z,
                                     MotionScope scope = MotionScope::all) {
  if (Z.sampled && Z.sampled->grid.kind() != GridKind::sideband)
    throw GridError("mirror motion must be sampled on a sideband grid");
  QuadratureField r(C.grid);
  const complex zs = Z.static_z;
  const complex flat_q =
      Z.flat_z != complex{} ? detail::flat_motion_moment(C, tau) * Z.flat_z / two_pi : complex{};

  for (std::size_t i = 0; i < C.size(); ++i) {
    const double w = C.grid[i];
    const complex ph = detail::arm_phase(w, tau, arm, theta);
    const complex stat = complex(0.0, 2.0 * w / speed_of_light) * zs;
    const complex vac_factor = scope == MotionScope::all ? 1.0 + stat : complex{1.0};
    r.a[i] = ph * vac_factor * C.a[i];
    r.d[i] = ph * vac_factor * C.d[i];
    r.signal[i] = ph * vac_factor * C.signal[i];

    complex cl = (1.0 + stat) * C.classical[i];
    const complex pre = complex(0.0, 2.0 / (speed_of_light * std::sqrt(std::abs(w))));
    if (Z.flat_z != complex{}) cl += pre * std::polar(1.0, -w * tau) * flat_q;
    if (Z.sampled) {
      const auto& zg = Z.sampled->grid;
      const auto zw = zg.trapezoid_weights();
      complex acc{};
      for (std::size_t j = 0; j < zg.size(); ++j) {
        const double u = w - zg[j];
        const complex cu = C.classical_at(u);
        if (cu == complex{}) continue;
        acc += zw[j] * std::polar(std::sqrt(std::abs(u)) * u, -zg[j] * tau) * cu *
               Z.sampled->values[j];
      }
      cl += pre * acc / two_pi;
      for (const auto& l : C.lines) {
        const double u0 = l.omega;
        const double k = std::sqrt(u0) * u0;
        cl += pre * (std::polar(k, -(w - u0) * tau) * l.weight * Z.sampled_at(w - u0) -
                     std::polar(k, -(w + u0) * tau) * std::conj(l.weight) * Z.sampled_at(w + u0));
      }
    }
    r.classical[i] = ph * cl;
  }
  for (const auto& l : C.lines) {
    const complex stat = complex(0.0, 2.0 * l.omega / speed_of_light) * zs;
    r.lines.push_back({l.omega, detail::arm_phase(l.omega, tau, arm, theta) * (1.0 + stat) * l.weight});
  }
  return r;
}

/// Heisenberg-picture split of the source field under the displacement: D = D_c + D_v.
struct DisplacedInput {
  QuadratureField classical;
  QuadratureField vacuum;

  QuadratureField total() const { return combine(1.0, classical, 1.0, vacuum); }
};

inline DisplacedInput displace_coherent(const CoherentAmplitude& alpha, const FrequencyGrid& grid) {
  QuadratureField c(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) c.classical[i] = alpha.classical(grid[i]);
  if (alpha.is_monochromatic()) {
    const auto& m = alpha.monochromatic();
    if (m.N != 0.0) c.lines.push_back({m.omega0, complex{m.N}});
  }
  return {std::move(c), QuadratureField::vacuum_d(grid)};
}

/// Output field B at the dark port for a classical mirror motion.
///
/// e^{−2iωτ}B(ω) = i s D_c + i s D_v + c Â
///   + (2i/c)∫dΩ/2π e^{−iΩτ}√|(ω−Ω)/ω|(ω−Ω) D_c(ω−Ω)[i s Z_com(Ω) − c Z_diff(Ω)]
/// with s = sin(θ/2), c = cos(θ/2).
inline QuadratureField assemble_io(const InterferometerConfig& config,
                                   const CoherentAmplitude& alpha, const MirrorMotionSpec& motion,
                                   const FrequencyGrid& grid) {
  config.validate();
  const double tau = config.tau();
  const auto D = displace_coherent(alpha, grid).total();
  const auto A = QuadratureField::vacuum_a(grid);
  const auto [Cx, Cy] = beam_splitter_in(D, A);
  const auto Zx = scaled_sum(1.0, motion.com, 1.0, motion.diff);
  const auto Zy = scaled_sum(1.0, motion.com, -1.0, motion.diff);
  const auto Cxp = arm_propagate(Cx, tau, Arm::x, config.theta, Zx, MotionScope::classical_only);
  const auto Cyp = arm_propagate(Cy, tau, Arm::y, config.theta, Zy, MotionScope::classical_only);
  return beam_splitter_out(Cxp, Cyp);
}

}  // namespace michelson
