#pragma once

// Thermophysical functions of a binary alloy with constant per-phase
// properties and a lever-rule mushy zone. Temperatures are in degrees
// Celsius and enthalpy is referenced to H(0 C) = 0; the (1 + pT) factor of
// the liquid-fraction closed form depends on that convention.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "mushybench/error.hpp"

namespace mushybench {

struct MaterialProperties {
  double cp_solid = 0.0;      // J/(kg K)
  double cp_liquid = 0.0;     // J/(kg K)
  double kappa_solid = 0.0;   // W/(m K)
  double kappa_liquid = 0.0;  // W/(m K)
  double density = 0.0;       // kg/m^3
  double latent_heat = 0.0;   // J/kg
  double t_solidus = 0.0;     // C
  double t_liquidus = 0.0;    // C
  std::optional<double> t_melt;  // C, pure solvent; only the reference curve needs it
  double solidus_fraction = 0.0;  // liquid fraction left at the solidus (eutectic when > 0)
};

/// Throws ConfigurationError naming the first violated invariant.
inline void validate(const MaterialProperties& m) {
  const auto require_positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ConfigurationError(std::string("material: ") + name + " must be positive and finite");
    }
  };
  require_positive(m.cp_solid, "C_s");
  require_positive(m.cp_liquid, "C_l");
  require_positive(m.kappa_solid, "kappa_s");
  require_positive(m.kappa_liquid, "kappa_l");
  require_positive(m.density, "rho");
  require_positive(m.latent_heat, "L");
  if (!std::isfinite(m.t_solidus) || !std::isfinite(m.t_liquidus)) {
    throw ConfigurationError("material: T_s and T_l must be finite");
  }
  if (!(m.t_solidus < m.t_liquidus)) {
    throw ConfigurationError("material: T_s < T_l violated");
  }
  if (m.t_melt && !(*m.t_melt > m.t_liquidus)) {
    throw ConfigurationError("material: T_m > T_l violated");
  }
  if (!(m.solidus_fraction >= 0.0 && m.solidus_fraction < 1.0)) {
    throw ConfigurationError("material: 0 <= lambda0 < 1 violated");
  }
}

/// Properties of the VT3-1 titanium alloy (Ti-6.5Al-2.5Mo-1.5Cr-0.5Fe-0.3Si).
inline MaterialProperties vt3_1() {
  MaterialProperties m;
  m.cp_solid = 600.0;
  m.cp_liquid = 1200.0;
  m.kappa_solid = 10.0;
  m.kappa_liquid = 35.0;
  m.density = 4500.0;
  m.latent_heat = 3.55e5;
  m.t_solidus = 1550.0;
  m.t_liquidus = 1620.0;
  m.t_melt = 1668.0;
  m.solidus_fraction = 0.0;
  return m;
}

/// Liquid fractions within this distance outside [0, 1] are accepted by
/// liquid_fraction; anything further is an error.
inline constexpr double fraction_range_tolerance = 1e-6;

/// Closed-form liquid fraction solving
///   (1 + p T) dlambda/dT + a lambda + b = 0,  lambda(T_l) = 1.
struct LiquidFractionModel {
  double a = 0.0;
  double b = 0.0;
  double p = 0.0;  // 1/K
  double t_solidus = 0.0;
  double t_liquidus = 0.0;
  double solidus_fraction = 0.0;

  bool degenerate() const { return a == 0.0 || p == 0.0; }

  /// Unchecked closed form. Written as 1 + (a+b)/a * expm1((a/p) ln r), which
  /// equals -b/a + (a+b)/a * r^(a/p) and stays accurate for small |a|.
  double evaluate(double t) const {
    const double log_ratio = std::log1p(p * t_liquidus) - std::log1p(p * t);
    return 1.0 + (a + b) * std::expm1(a / p * log_ratio) / a;
  }

  double evaluate_derivative(double t) const {
    return -(a * evaluate(t) + b) / (1.0 + p * t);
  }
};

namespace detail {

inline void check_model(const LiquidFractionModel& model, double t) {
  if (model.degenerate()) {
    throw DegenerateCoefficients(
        "liquid fraction: closed form undefined for a == 0 or p == 0; "
        "use integrate_fraction_ode instead");
  }
  if (!(t >= model.t_solidus && t <= model.t_liquidus)) {
    throw DomainError("liquid fraction: T = " + std::to_string(t) + " outside [T_s, T_l]");
  }
  if (!(1.0 + model.p * t > 0.0 && 1.0 + model.p * model.t_liquidus > 0.0)) {
    throw DomainError("liquid fraction: 1 + pT must be positive on [T, T_l]");
  }
}

inline void check_temperature(double t) {
  if (!(t >= 0.0)) {
    throw DomainError("temperature must be >= 0 C (enthalpy reference is 0 C)");
  }
}

}  // namespace detail

/// Mixture conductivity (1 - lambda) kappa_s + lambda kappa_l.
inline double mixture_conductivity(const MaterialProperties& m, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw DomainError("mixture conductivity: liquid fraction outside [0, 1]");
  }
  return (1.0 - lambda) * m.kappa_solid + lambda * m.kappa_liquid;
}

inline double liquid_fraction(const LiquidFractionModel& model, double t) {
  detail::check_model(model, t);
  const double lambda = model.evaluate(t);
  if (!(lambda >= -fraction_range_tolerance && lambda <= 1.0 + fraction_range_tolerance)) {
    throw DomainError("liquid fraction: lambda(" + std::to_string(t) + ") = " +
                      std::to_string(lambda) + " outside [0, 1]");
  }
  return lambda;
}

/// dlambda/dT = -(a lambda + b) / (1 + p T).
inline double liquid_fraction_derivative(const LiquidFractionModel& model, double t) {
  const double lambda = liquid_fraction(model, t);
  return -(model.a * lambda + model.b) / (1.0 + model.p * t);
}

/// Liquid fraction over the whole temperature axis: 0 below the solidus,
/// 1 above the liquidus, the closed form (clamped to [0, 1]) in between.
inline double phase_fraction(const LiquidFractionModel& model, double t) {
  if (t < model.t_solidus) return 0.0;
  if (t > model.t_liquidus) return 1.0;
  return std::clamp(liquid_fraction(model, t), 0.0, 1.0);
}

inline double conductivity(const MaterialProperties& m, const LiquidFractionModel& model,
                           double t) {
  return mixture_conductivity(m, phase_fraction(model, t));
}

inline double solidus_enthalpy(const MaterialProperties& m) {
  return m.density * m.cp_solid * m.t_solidus;
}

inline double liquidus_enthalpy(const MaterialProperties& m) {
  return m.density * (m.cp_liquid * m.t_liquidus + m.latent_heat);
}

/// Volumetric enthalpy, J/m^3.
inline double enthalpy(const MaterialProperties& m, const LiquidFractionModel& model, double t) {
  detail::check_temperature(t);
  if (t < m.t_solidus) return m.density * m.cp_solid * t;
  if (t <= m.t_liquidus) {
    const double lambda = liquid_fraction(model, t);
    return m.density *
           (m.cp_solid * t + lambda * ((m.cp_liquid - m.cp_solid) * t + m.latent_heat));
  }
  return m.density * (m.cp_liquid * t + m.latent_heat);
}

/// Apparent specific heat, J/(kg K); equals dH/dT / rho away from T_s and T_l.
inline double apparent_capacity(const MaterialProperties& m, const LiquidFractionModel& model,
                                double t) {
  detail::check_temperature(t);
  if (t < m.t_solidus) return m.cp_solid;
  if (t > m.t_liquidus) return m.cp_liquid;
  const double lambda = liquid_fraction(model, t);
  const double dlambda = -(model.a * lambda + model.b) / (1.0 + model.p * t);
  return (1.0 - lambda) * m.cp_solid + lambda * m.cp_liquid +
         ((m.cp_liquid - m.cp_solid) * t + m.latent_heat) * dlambda;
}

/// Width of the final bisection bracket in the mushy inversion, K.
inline constexpr double inversion_tolerance = 1e-10;

inline double temperature_from_enthalpy(const MaterialProperties& m,
                                        const LiquidFractionModel& model, double h) {
  if (!(h >= 0.0)) throw DomainError("temperature_from_enthalpy: H must be >= 0");
  const double h_s = solidus_enthalpy(m);
  const double h_l = liquidus_enthalpy(m);
  if (h < h_s) return h / (m.density * m.cp_solid);
  if (h > h_l) return (h / m.density - m.latent_heat) / m.cp_liquid;

  // Mushy enthalpy is strictly increasing (dH/dT = kappa / alpha_sl > 0).
  const auto residual = [&](double t) { return enthalpy(m, model, t) - h; };
  double lo = m.t_solidus;
  double hi = m.t_liquidus;
  const double f_lo = residual(lo);
  const double f_hi = residual(hi);
  // The closed form only reaches H_s up to the root tolerance of alpha_sl.
  const double slack = 1e-9 * h_l;
  if (f_lo >= 0.0) {
    if (f_lo <= slack) return lo;
    throw InversionError("temperature_from_enthalpy: mushy enthalpy at T_s exceeds H");
  }
  if (f_hi <= 0.0) {
    if (f_hi >= -slack) return hi;
    throw InversionError("temperature_from_enthalpy: mushy enthalpy at T_l below H");
  }
  while (hi - lo > inversion_tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (residual(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Empirical fraction curve 1 - (T_m - T_s)/(T_l - T_s) * (T_l - T)/(T_m - T).
inline double reference_fraction_vt(const MaterialProperties& m, double t) {
  if (!m.t_melt) throw ConfigurationError("reference fraction: T_m is required");
  if (!(t >= m.t_solidus && t <= m.t_liquidus)) {
    throw DomainError("reference fraction: T outside [T_s, T_l]");
  }
  const double tm = *m.t_melt;
  return 1.0 - (tm - m.t_solidus) / (m.t_liquidus - m.t_solidus) * (m.t_liquidus - t) / (tm - t);
}

/// Power-law fraction ((T - T_s)/(T_l - T_s))^n.
inline double reference_fraction_power(const MaterialProperties& m, double t, double n) {
  if (!(n > 0.0)) throw DomainError("power fraction: exponent must be positive");
  if (!(t >= m.t_solidus && t <= m.t_liquidus)) {
    throw DomainError("power fraction: T outside [T_s, T_l]");
  }
  return std::pow((t - m.t_solidus) / (m.t_liquidus - m.t_solidus), n);
}

}  // namespace mushybench
