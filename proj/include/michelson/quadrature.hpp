#pragma once

// Global adaptive Gauss-Kronrod quadrature with oscillatory-weight panelling.
// Node and weight tables come from Boost.Math.

#include <michelson/errors.hpp>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace michelson::numerics {

enum class Rule { gk15, gk31 };

/// The oscillatory factor multiplying the integrand: 1, sin(ωτ) or cos(ωτ).
enum class Weight { none, sine, cosine };

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
  double l1 = 0.0;  // ∫|f|, used for the round-off floor
  std::size_t panels = 0;

  double relative_error() const {
    if (value == 0.0) return abs_error == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return abs_error / std::abs(value);
  }
};

/// Subdivision budget exhausted; carries the best estimate reached.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, QuadratureResult best)
      : Error(what), best_(best) {}
  const QuadratureResult& best() const noexcept { return best_; }

 private:
  QuadratureResult best_;
};

struct QuadratureOptions {
  double rel_tol = 1e-9;
  double abs_tol = 0.0;
  std::size_t max_panels = 4000;
  Rule rule = Rule::gk15;
};

namespace detail {

struct Panel {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
};

template <unsigned N, class F>
Panel apply_rule(F& f, double a, double b) {
  using kronrod = boost::math::quadrature::gauss_kronrod<double, N>;
  using gauss = boost::math::quadrature::gauss<double, (N - 1) / 2>;
  const auto& x = kronrod::abscissa();
  const auto& wk = kronrod::weights();
  const auto& wg = gauss::weights();
  constexpr unsigned gauss_order = (N - 1) / 2;

  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  const double f0 = f(mid);
  double k = f0 * wk[0];
  double g = (gauss_order & 1U) ? f0 * wg[0] : 0.0;
  double l1 = std::abs(f0) * wk[0];
  // Gauss nodes sit on the even (odd order) or odd (even order) Kronrod indices.
  const unsigned gauss_start = (gauss_order & 1U) ? 2 : 1;
  const unsigned kronrod_start = (gauss_order & 1U) ? 1 : 2;
  for (unsigned i = gauss_start; i < x.size(); i += 2) {
    const double fp = f(mid + half * x[i]);
    const double fm = f(mid - half * x[i]);
    k += (fp + fm) * wk[i];
    g += (fp + fm) * wg[i / 2];
    l1 += (std::abs(fp) + std::abs(fm)) * wk[i];
  }
  for (unsigned i = kronrod_start; i < x.size(); i += 2) {
    const double fp = f(mid + half * x[i]);
    const double fm = f(mid - half * x[i]);
    k += (fp + fm) * wk[i];
    l1 += (std::abs(fp) + std::abs(fm)) * wk[i];
  }
  Panel p{a, b, k * half, std::abs((k - g) * half), l1 * std::abs(half)};
  if (!std::isfinite(p.value) || !std::isfinite(p.error))
    throw QuadratureError("integrand is not finite on [" + std::to_string(a) + ", " +
                              std::to_string(b) + "]",
                          QuadratureResult{});
  return p;
}

template <class F>
Panel apply(F& f, double a, double b, Rule rule) {
  return rule == Rule::gk31 ? apply_rule<31>(f, a, b) : apply_rule<15>(f, a, b);
}

inline bool worse(const Panel& l, const Panel& r) { return l.error < r.error; }

}  // namespace detail

/// Integrates f over the union of consecutive breakpoint intervals.
///
/// Bisects the panel with the largest error estimate until the summed
/// estimate drops below max(rel_tol·|I|, abs_tol, round-off floor).
template <class F>
QuadratureResult integrate_adaptive(F&& f, const std::vector<double>& breakpoints,
                                    const QuadratureOptions& opt = {}) {
  if (breakpoints.size() < 2) return {};
  if (!(opt.rel_tol > 0.0)) throw DomainError("quadrature tolerance must be positive");

  std::vector<detail::Panel> heap;
  heap.reserve(std::max<std::size_t>(opt.max_panels + 2, breakpoints.size()));
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (breakpoints[i] > breakpoints[i - 1])
      heap.push_back(detail::apply(f, breakpoints[i - 1], breakpoints[i], opt.rule));
  }
  std::make_heap(heap.begin(), heap.end(), detail::worse);

  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (;;) {
    QuadratureResult r;
    for (const auto& p : heap) {
      r.value += p.value;
      r.abs_error += p.error;
      r.l1 += p.l1;
    }
    r.panels = heap.size();
    const double target = std::max({opt.rel_tol * std::abs(r.value), opt.abs_tol, 50.0 * eps * r.l1});
    if (r.abs_error <= target || heap.empty()) return r;
    if (heap.size() >= opt.max_panels) {
      std::ostringstream msg;
      msg << "adaptive quadrature did not converge after " << heap.size()
          << " panels (estimate " << r.value << ", error " << r.abs_error << ")";
      throw QuadratureError(msg.str(), r);
    }
    std::pop_heap(heap.begin(), heap.end(), detail::worse);
    const detail::Panel worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Panel cannot be split further in double precision.
      std::ostringstream msg;
      msg << "adaptive quadrature exhausted floating-point resolution near " << worst.a;
      heap.push_back(worst);
      throw QuadratureError(msg.str(), r);
    }
    heap.push_back(detail::apply(f, worst.a, mid, opt.rule));
    std::push_heap(heap.begin(), heap.end(), detail::worse);
    heap.push_back(detail::apply(f, mid, worst.b, opt.rule));
    std::push_heap(heap.begin(), heap.end(), detail::worse);
  }
}

template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, const QuadratureOptions& opt = {}) {
  if (a == b) return {};
  if (b < a) {
    auto r = integrate_adaptive(std::forward<F>(f), std::vector<double>{b, a}, opt);
    r.value = -r.value;
    return r;
  }
  return integrate_adaptive(std::forward<F>(f), std::vector<double>{a, b}, opt);
}

struct SemiInfiniteOptions {
  double rel_tol = 1e-9;
  double lower = 0.0;
  /// Truncation point past which the integrand is negligible; +inf maps the
  /// half line onto [0, 1) instead (only for the unweighted case).
  double upper = std::numeric_limits<double>::infinity();
  /// Analytic bound on the discarded tail, added to the error estimate.
  double tail_bound = 0.0;
  Rule rule = Rule::gk15;
  std::size_t max_panels = 4000;
  /// Split at the weight's zeros once the range spans more periods than this.
  double period_threshold = 50.0;
};

/// ∫_lower^upper f(ω)·w(ωτ) dω for the weight w selected by `weight`.
template <class F>
QuadratureResult integrate_semi_infinite(F&& f, Weight weight, double tau,
                                         const SemiInfiniteOptions& opt = {}) {
  if (!(opt.rel_tol > 0.0)) throw DomainError("quadrature tolerance must be positive");
  if (opt.lower < 0.0) throw DomainError("semi-infinite integration starts at or above zero");
  if (weight == Weight::sine && tau == 0.0) return {};

  const QuadratureOptions q{opt.rel_tol, 0.0, opt.max_panels, opt.rule};

  if (!std::isfinite(opt.upper)) {
    if (weight != Weight::none)
      throw DomainError("oscillatory weight on an unbounded range needs a finite cutoff");
    const double a = opt.lower;
    auto mapped = [&](double t) {
      const double s = 1.0 - t;
      const double x = a + t / s;
      const double v = f(x);
      return v == 0.0 ? 0.0 : v / (s * s);
    };
    auto r = integrate_adaptive(mapped, 0.0, 1.0, q);
    r.abs_error += opt.tail_bound;
    return r;
  }

  auto weighted = [&](double x) {
    switch (weight) {
      case Weight::sine: return f(x) * std::sin(x * tau);
      case Weight::cosine: return f(x) * std::cos(x * tau);
      case Weight::none: break;
    }
    return f(x);
  };

  std::vector<double> breaks{opt.lower};
  const double span = opt.upper - opt.lower;
  const double periods = std::abs(tau) * span / (2.0 * std::numbers::pi);
  if (weight != Weight::none && periods > opt.period_threshold) {
    const double half_period = std::numbers::pi / std::abs(tau);
    const double shift = weight == Weight::cosine ? 0.5 : 0.0;
    auto k = static_cast<long long>(std::floor(opt.lower / half_period - shift)) + 1;
    for (;; ++k) {
      const double z = (static_cast<double>(k) + shift) * half_period;
      if (z >= opt.upper) break;
      if (z > breaks.back()) breaks.push_back(z);
    }
  }
  breaks.push_back(opt.upper);

  auto r = integrate_adaptive(weighted, breaks, q);
  r.abs_error += opt.tail_bound;
  return r;
}

}  // namespace michelson::numerics
