#pragma once

#include <michelson/errors.hpp>
#include <michelson/grid.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>

namespace michelson {

/// Ladder operators of the two sidebands ω₀ ± Ω of the a and d inputs.
enum class Mode : std::size_t {
  a_plus,
  a_minus,
  a_plus_dag,
  a_minus_dag,
  d_plus,
  d_minus,
  d_plus_dag,
  d_minus_dag,
};
inline constexpr std::size_t mode_count = 8;

inline constexpr std::string_view mode_name(Mode m) {
  constexpr std::array<std::string_view, mode_count> names{
      "a+", "a-", "a+^dag", "a-^dag", "d+", "d-", "d+^dag", "d-^dag"};
  return names[static_cast<std::size_t>(m)];
}

inline constexpr Mode dagger_of(Mode m) {
  switch (m) {
    case Mode::a_plus: return Mode::a_plus_dag;
    case Mode::a_minus: return Mode::a_minus_dag;
    case Mode::a_plus_dag: return Mode::a_plus;
    case Mode::a_minus_dag: return Mode::a_minus;
    case Mode::d_plus: return Mode::d_plus_dag;
    case Mode::d_minus: return Mode::d_minus_dag;
    case Mode::d_plus_dag: return Mode::d_plus;
    case Mode::d_minus_dag: return Mode::d_minus;
  }
  return m;
}

enum class Input { a, d };

/// Mode carried by the quadrature Â(ω') or D̂_v(ω') for an optical frequency
/// ω' whose magnitude sits on one of the sidebands ω₀ ± Ω.
inline Mode sideband_mode(Input in, double omega_prime, double omega0) {
  const bool plus = std::abs(omega_prime) > omega0;
  const bool dag = omega_prime < 0.0;
  const std::size_t base = in == Input::a ? 0 : 4;
  const std::size_t offset = (plus ? 0 : 1) + (dag ? 2 : 0);
  return static_cast<Mode>(base + offset);
}

/// Linear operator at a sideband, as coefficients over the eight ladder
/// operators, the 2πδ(Ω) carrier and the strain h(±Ω)/h_SQL.
struct SidebandOperator {
  std::array<complex, mode_count> c{};
  complex carrier{};
  complex strain_plus{};   // coefficient of h(+Ω)/h_SQL
  complex strain_minus{};  // coefficient of h(−Ω)/h_SQL
  bool carrier_divergent = false;  // carrier carries the κ ∝ Ω⁻² piece

  complex& operator[](Mode m) { return c[static_cast<std::size_t>(m)]; }
  complex operator[](Mode m) const { return c[static_cast<std::size_t>(m)]; }

  SidebandOperator dagger() const {
    SidebandOperator r;
    for (std::size_t i = 0; i < mode_count; ++i) {
      const auto m = static_cast<Mode>(i);
      r[dagger_of(m)] = std::conj((*this)[m]);
    }
    r.carrier = std::conj(carrier);
    r.strain_plus = std::conj(strain_minus);
    r.strain_minus = std::conj(strain_plus);
    r.carrier_divergent = carrier_divergent;
    return r;
  }

  SidebandOperator& operator+=(const SidebandOperator& o) {
    for (std::size_t i = 0; i < mode_count; ++i) c[i] += o.c[i];
    carrier += o.carrier;
    strain_plus += o.strain_plus;
    strain_minus += o.strain_minus;
    carrier_divergent = carrier_divergent || o.carrier_divergent;
    return *this;
  }

  SidebandOperator& operator*=(complex k) {
    for (auto& x : c) x *= k;
    carrier *= k;
    strain_plus *= k;
    strain_minus *= k;
    return *this;
  }

  friend SidebandOperator operator+(SidebandOperator x, const SidebandOperator& y) { return x += y; }
  friend SidebandOperator operator-(SidebandOperator x, SidebandOperator y) { return x += (y *= -1.0); }
  friend SidebandOperator operator*(complex k, SidebandOperator x) { return x *= k; }

  /// Largest coefficient magnitude difference, carrier and strain included.
  friend double max_deviation(const SidebandOperator& x, const SidebandOperator& y) {
    double worst = std::max({std::abs(x.carrier - y.carrier), std::abs(x.strain_plus - y.strain_plus),
                             std::abs(x.strain_minus - y.strain_minus)});
    for (std::size_t i = 0; i < mode_count; ++i) worst = std::max(worst, std::abs(x.c[i] - y.c[i]));
    return worst;
  }
};

/// Operator in the two-photon basis {a1, a2, d1, d2} with carrier and strain.
struct QuadratureOperator {
  complex a1{}, a2{}, d1{}, d2{};
  complex carrier{};
  complex strain{};  // coefficient of h(Ω)/h_SQL
  bool carrier_divergent = false;

  std::array<complex, 4> vacuum() const { return {a1, a2, d1, d2}; }

  friend double max_deviation(const QuadratureOperator& x, const QuadratureOperator& y) {
    return std::max({std::abs(x.a1 - y.a1), std::abs(x.a2 - y.a2), std::abs(x.d1 - y.d1),
                     std::abs(x.d2 - y.d2), std::abs(x.carrier - y.carrier),
                     std::abs(x.strain - y.strain)});
  }
};

/// Re-expresses an operator living on {a+, a-†, d+, d-†, h(Ω)} in the
/// two-photon basis; x·a+ + y·a-† = (x+y)/√2·a1 + i(x−y)/√2·a2.
inline QuadratureOperator to_two_photon(const SidebandOperator& op, double tol = 0.0) {
  for (Mode m : {Mode::a_minus, Mode::a_plus_dag, Mode::d_minus, Mode::d_plus_dag}) {
    if (std::abs(op[m]) > tol)
      throw DomainError("operator has a component on " + std::string(mode_name(m)) +
                        " outside the two-photon basis");
  }
  if (std::abs(op.strain_minus) > tol)
    throw DomainError("operator has a component on h(-Omega) outside the two-photon basis");
  const double r = 1.0 / std::sqrt(2.0);
  const complex i{0.0, 1.0};
  QuadratureOperator q;
  q.a1 = r * (op[Mode::a_plus] + op[Mode::a_minus_dag]);
  q.a2 = i * r * (op[Mode::a_plus] - op[Mode::a_minus_dag]);
  q.d1 = r * (op[Mode::d_plus] + op[Mode::d_minus_dag]);
  q.d2 = i * r * (op[Mode::d_plus] - op[Mode::d_minus_dag]);
  q.carrier = op.carrier;
  q.strain = op.strain_plus;
  q.carrier_divergent = op.carrier_divergent;
  return q;
}

}  // namespace michelson
