#pragma once

#include <michelson/amplitude.hpp>
#include <michelson/errors.hpp>
#include <michelson/quadrature.hpp>

#include <cmath>
#include <string>

namespace michelson::numerics {

/// The definite α-moments entering the pulsed-regime spectrum.
///
///   J        = ∫ α²
///   Ic_minus = ∫ x^{-1/2} cos(xτ) α     Ic_plus = ∫ x^{1/2} cos(xτ) α
///   Is_minus = ∫ x^{-1/2} sin(xτ) α     Is_plus = ∫ x^{1/2} sin(xτ) α
///   Is_3_2   = ∫ x^{3/2} sin(xτ) α
struct MomentIntegrals {
  double J = 0.0;
  double Ic_minus = 0.0;
  double Ic_plus = 0.0;
  double Is_minus = 0.0;
  double Is_plus = 0.0;
  double Is_3_2 = 0.0;

  /// Largest estimated relative error over the six integrals.
  double max_rel_error = 0.0;
};

struct MomentOptions {
  double rel_tol = 1e-9;
  double cutoff_widths = 12.0;
  Rule rule = Rule::gk15;
};

inline MomentIntegrals moment_integrals(const CoherentAmplitude& alpha, double tau,
                                        const MomentOptions& opt = {}) {
  if (alpha.is_monochromatic())
    throw DomainError("moment integrals need a broadband amplitude; the monochromatic "
                      "carrier is a delta function");
  const auto [lo, hi] = alpha.support(opt.cutoff_widths);

  MomentIntegrals m;
  auto run = [&](const char* name, double power, Weight weight, auto&& integrand) {
    SemiInfiniteOptions so;
    so.rel_tol = opt.rel_tol;
    so.lower = lo;
    so.upper = hi;
    so.rule = opt.rule;
    so.tail_bound = alpha.tail_bound(power, opt.cutoff_widths);
    try {
      const auto r = integrate_semi_infinite(integrand, weight, tau, so);
      if (r.value != 0.0) m.max_rel_error = std::max(m.max_rel_error, r.relative_error());
      return r.value;
    } catch (const QuadratureError& e) {
      throw QuadratureError(std::string("moment integral ") + name + ": " + e.what(), e.best());
    }
  };

  auto pow_alpha = [&alpha](double p) {
    return [&alpha, p](double x) {
      const double a = alpha(x);
      return a == 0.0 ? 0.0 : std::pow(x, p) * a;
    };
  };

  SemiInfiniteOptions jo;
  jo.rel_tol = opt.rel_tol;
  jo.lower = lo;
  jo.upper = hi;
  jo.rule = opt.rule;
  {
    auto sq = [&alpha](double x) {
      const double a = alpha(x);
      return a * a;
    };
    try {
      const auto r = integrate_semi_infinite(sq, Weight::none, 0.0, jo);
      m.J = r.value;
      if (r.value != 0.0) m.max_rel_error = std::max(m.max_rel_error, r.relative_error());
    } catch (const QuadratureError& e) {
      throw QuadratureError(std::string("moment integral J: ") + e.what(), e.best());
    }
  }
  m.Ic_minus = run("Ic_minus", -0.5, Weight::cosine, pow_alpha(-0.5));
  m.Ic_plus = run("Ic_plus", 0.5, Weight::cosine, pow_alpha(0.5));
  m.Is_minus = run("Is_minus", -0.5, Weight::sine, pow_alpha(-0.5));
  m.Is_plus = run("Is_plus", 0.5, Weight::sine, pow_alpha(0.5));
  m.Is_3_2 = run("Is_3_2", 1.5, Weight::sine, pow_alpha(1.5));
  return m;
}

}  // namespace michelson::numerics
