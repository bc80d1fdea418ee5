#pragma once

// Constant-diffusivity linearization: alpha_s and alpha_l follow from the
// phase properties, alpha_sl is the root of lambda(T_s; alpha_sl) = lambda0.

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "mushybench/error.hpp"
#include "mushybench/material.hpp"

namespace mushybench {

struct PhaseDiffusivities {
  double solid = 0.0;   // m^2/s
  double liquid = 0.0;  // m^2/s
};

/// kappa / (rho C) for each pure phase.
inline PhaseDiffusivities phase_diffusivities(const MaterialProperties& m) {
  return {m.kappa_solid / (m.density * m.cp_solid), m.kappa_liquid / (m.density * m.cp_liquid)};
}

struct OdeCoefficients {
  double a = 0.0;
  double b = 0.0;
  double p = 0.0;
};

inline OdeCoefficients ode_coefficients(const MaterialProperties& m, double alpha_sl) {
  if (!(alpha_sl > 0.0)) throw DomainError("ode_coefficients: alpha_sl must be positive");
  const double scale = alpha_sl * m.density * m.latent_heat;
  return {
      (alpha_sl * m.density * (m.cp_liquid - m.cp_solid) - (m.kappa_liquid - m.kappa_solid)) / scale,
      (alpha_sl * m.density * m.cp_solid - m.kappa_solid) / scale,
      (m.cp_liquid - m.cp_solid) / m.latent_heat,
  };
}

inline LiquidFractionModel fraction_model(const MaterialProperties& m, double alpha_sl) {
  const auto c = ode_coefficients(m, alpha_sl);
  return {c.a, c.b, c.p, m.t_solidus, m.t_liquidus, m.solidus_fraction};
}

struct FractionSample {
  double temperature = 0.0;
  double fraction = 0.0;
};

/// Classical RK4 march of (1 + pT) dlambda/dT = -(a lambda + b) from
/// (T_l, 1) down to T_s in `steps` uniform steps. Returns steps + 1 rows.
/// Independent of the closed form; also valid when a == 0 or p == 0.
inline std::vector<FractionSample> integrate_fraction_ode(const MaterialProperties& m,
                                                          double alpha_sl, int steps) {
  if (steps < 100) throw DomainError("integrate_fraction_ode: need at least 100 steps");
  const auto c = ode_coefficients(m, alpha_sl);
  const auto rhs = [&](double t, double lambda) { return -(c.a * lambda + c.b) / (1.0 + c.p * t); };

  const double span = m.t_liquidus - m.t_solidus;
  const double dt = -span / steps;
  std::vector<FractionSample> table;
  table.reserve(static_cast<std::size_t>(steps) + 1);
  double lambda = 1.0;
  table.push_back({m.t_liquidus, lambda});
  for (int i = 0; i < steps; ++i) {
    const double t = m.t_liquidus - span * i / steps;
    const double k1 = rhs(t, lambda);
    const double k2 = rhs(t + 0.5 * dt, lambda + 0.5 * dt * k1);
    const double k3 = rhs(t + 0.5 * dt, lambda + 0.5 * dt * k2);
    const double k4 = rhs(t + dt, lambda + dt * k3);
    lambda += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!std::isfinite(lambda)) {
      throw IntegrationError("integrate_fraction_ode: non-finite value at step " +
                             std::to_string(i + 1));
    }
    const double t_next = (i + 1 == steps) ? m.t_solidus : m.t_liquidus - span * (i + 1) / steps;
    table.push_back({t_next, lambda});
  }
  return table;
}

struct RootSearch {
  double alpha_min = 1e-9;  // m^2/s
  double alpha_max = 1e-4;  // m^2/s
  int scan_points = 200;
  double relative_width = 1e-12;
  double residual_tolerance = 1e-10;
};

struct ScanPoint {
  double alpha = 0.0;
  double fraction_at_solidus = 0.0;
};

struct LinearizationResult {
  double alpha_s = 0.0;
  double alpha_sl = 0.0;
  double alpha_l = 0.0;
  LiquidFractionModel model;
  double residual = 0.0;  // |lambda(T_s; alpha_sl) - lambda0|
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  std::vector<ScanPoint> scan;
};

/// lambda(T_s) for a trial alpha_sl; falls back to RK4 on the a == 0 line.
inline double fraction_at_solidus(const MaterialProperties& m, double alpha_sl) {
  const auto model = fraction_model(m, alpha_sl);
  if (model.degenerate()) return integrate_fraction_ode(m, alpha_sl, 2000).back().fraction;
  return model.evaluate(m.t_solidus);
}

/// Geometric scan of lambda(T_s; alpha) used to bracket alpha_sl.
inline std::vector<ScanPoint> scan_mushy_diffusivity(const MaterialProperties& m,
                                                     const RootSearch& search = {}) {
  if (!(search.alpha_min > 0.0 && search.alpha_max > search.alpha_min) || search.scan_points < 2) {
    throw ConfigurationError("root search: need 0 < alpha_min < alpha_max and >= 2 points");
  }
  std::vector<ScanPoint> scan;
  scan.reserve(static_cast<std::size_t>(search.scan_points));
  const double ratio = search.alpha_max / search.alpha_min;
  for (int i = 0; i < search.scan_points; ++i) {
    const double alpha =
        i + 1 == search.scan_points
            ? search.alpha_max
            : search.alpha_min * std::pow(ratio, static_cast<double>(i) / (search.scan_points - 1));
    scan.push_back({alpha, fraction_at_solidus(m, alpha)});
  }
  return scan;
}

inline LinearizationResult solve_mushy_diffusivity(const MaterialProperties& m,
                                                   const RootSearch& search = {}) {
  validate(m);
  if (m.cp_liquid == m.cp_solid) {
    throw DegenerateCoefficients(
        "solve_mushy_diffusivity: C_l == C_s gives p == 0; the closed form is undefined");
  }
  const double target = m.solidus_fraction;
  auto scan = scan_mushy_diffusivity(m, search);

  std::vector<std::pair<double, double>> brackets;
  for (std::size_t i = 0; i + 1 < scan.size(); ++i) {
    const double f0 = scan[i].fraction_at_solidus - target;
    const double f1 = scan[i + 1].fraction_at_solidus - target;
    if (!std::isfinite(f0) || !std::isfinite(f1)) continue;
    if (f0 == 0.0) {
      brackets.emplace_back(scan[i].alpha, scan[i].alpha);
    } else if ((f0 < 0.0) != (f1 < 0.0) && f1 != 0.0) {
      brackets.emplace_back(scan[i].alpha, scan[i + 1].alpha);
    }
  }
  if (const double f_last = scan.back().fraction_at_solidus - target; f_last == 0.0) {
    brackets.emplace_back(scan.back().alpha, scan.back().alpha);
  }

  if (brackets.empty()) {
    std::vector<std::pair<double, double>> table;
    for (const auto& s : scan) table.emplace_back(s.alpha, s.fraction_at_solidus);
    throw RootNotFound("solve_mushy_diffusivity: lambda(T_s; alpha) - lambda0 has no sign change "
                       "in the scanned range",
                       std::move(table));
  }
  if (brackets.size() > 1) {
    throw AmbiguityError("solve_mushy_diffusivity: " + std::to_string(brackets.size()) +
                             " sign changes of lambda(T_s; alpha) - lambda0",
                         std::move(brackets));
  }

  const auto [bracket_lo, bracket_hi] = brackets.front();
  const auto f = [&](double alpha) { return fraction_at_solidus(m, alpha) - target; };
  double lo = bracket_lo;
  double hi = bracket_hi;
  double f_lo = f(lo);
  while (hi - lo > search.relative_width * hi) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = f(mid);
    if (f_mid == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  const double root = std::abs(f(lo)) <= std::abs(f(hi)) ? lo : hi;

  LinearizationResult result;
  const auto phases = phase_diffusivities(m);
  result.alpha_s = phases.solid;
  result.alpha_l = phases.liquid;
  result.alpha_sl = root;
  result.model = fraction_model(m, root);
  result.residual = std::abs(f(root));
  result.bracket_lo = bracket_lo;
  result.bracket_hi = bracket_hi;
  result.scan = std::move(scan);
  if (!(result.residual <= search.residual_tolerance)) {
    std::vector<std::pair<double, double>> table;
    for (const auto& s : result.scan) table.emplace_back(s.alpha, s.fraction_at_solidus);
    throw RootNotFound("solve_mushy_diffusivity: residual " + std::to_string(result.residual) +
                           " above tolerance after bisection",
                       std::move(table));
  }
  return result;
}

/// True when a finite liquid fraction remains at the solidus. The similarity
/// solution for this case uses the mushy formula unchanged and is experimental.
inline bool is_eutectic(const MaterialProperties& m) { return m.solidus_fraction > 0.0; }

}  // namespace mushybench
