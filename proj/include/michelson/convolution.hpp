#pragma once

#include <michelson/constants.hpp>
#include <michelson/errors.hpp>
#include <michelson/grid.hpp>

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

namespace michelson::numerics {

/// Complex samples on a frequency grid.
struct GriddedFunction {
  FrequencyGrid grid;
  std::vector<complex> values;

  GriddedFunction(FrequencyGrid g, std::vector<complex> v) : grid(std::move(g)), values(std::move(v)) {
    if (values.size() != grid.size()) throw GridError("sample count does not match grid");
  }
};

namespace detail {

/// Integer lattice index of every point, or nullopt if the grid is off-lattice.
inline std::optional<std::vector<long long>> lattice(const FrequencyGrid& g, double step) {
  std::vector<long long> idx(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double k = g[i] / step;
    const double r = std::round(k);
    if (std::abs(k - r) > 1e-6) return std::nullopt;
    idx[i] = static_cast<long long>(r);
  }
  return idx;
}

}  // namespace detail

/// h(Ω) = ∫ dΩ'/2π f(Ω') g(Ω − Ω') by the trapezoid rule on f's grid.
///
/// All three grids must be uniform with a common step and lie on the lattice
/// k·step so that Ω − Ω' lands on a sample of g; g is zero off its grid.
inline GriddedFunction convolve_on_grid(const GriddedFunction& f, const GriddedFunction& g,
                                        const FrequencyGrid& out) {
  const auto step = f.grid.uniform_step();
  if (!step) throw GridError("convolution needs a uniform grid for f");
  auto same_step = [&](const FrequencyGrid& grid) {
    if (grid.size() == 1) return true;
    const auto s = grid.uniform_step();
    return s && std::abs(*s - *step) <= 1e-9 * *step;
  };
  if (!same_step(g.grid) || !same_step(out))
    throw GridError("convolution grids have different spacing");
  const auto fi = detail::lattice(f.grid, *step);
  const auto gi = detail::lattice(g.grid, *step);
  const auto oi = detail::lattice(out, *step);
  if (!fi || !gi || !oi) throw GridError("convolution grids are not aligned on a common lattice");

  const long long g0 = gi->front();
  const auto gn = static_cast<long long>(gi->size());
  const auto w = f.grid.trapezoid_weights();

  std::vector<complex> h(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    complex acc{};
    for (std::size_t j = 0; j < f.grid.size(); ++j) {
      const long long k = (*oi)[i] - (*fi)[j] - g0;
      if (k < 0 || k >= gn) continue;
      acc += w[j] * f.values[j] * g.values[static_cast<std::size_t>(k)];
    }
    h[i] = acc / two_pi;
  }
  return {out, std::move(h)};
}

inline GriddedFunction convolve_on_grid(const GriddedFunction& f, const GriddedFunction& g) {
  return convolve_on_grid(f, g, f.grid);
}

}  // namespace michelson::numerics
