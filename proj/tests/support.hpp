#pragma once

// Test-only helpers: fixtures for the VT3-1 benchmark and oracles that do
// not share code paths with the library.

#include <cmath>
#include <random>

#include "mushybench/linearization.hpp"
#include "mushybench/material.hpp"
#include "mushybench/similarity.hpp"

namespace mushybench::testing {

/// Reference mushy diffusivity and front coefficients for VT3-1, m^2/s.
inline constexpr double kReferenceAlphaSl = 2.26891e-7;
inline constexpr double kReferenceKs = 0.00134109;
inline constexpr double kReferenceKl = 0.00206009;

inline LiquidFractionModel reference_model() { return fraction_model(vt3_1(), kReferenceAlphaSl); }

inline const LinearizationResult& vt3_linearization() {
  static const LinearizationResult r = solve_mushy_diffusivity(vt3_1());
  return r;
}

inline const ExactSolution& vt3_solution() {
  static const ExactSolution sol(vt3_1(), vt3_linearization(), 800.0, 1650.0);
  return sol;
}

/// RK4 on (1 + pT) dlambda/dT = -(a lambda + b) from (T_l, 1) to `t_end`,
/// written out independently of the library's integrator.
inline double rk4_fraction(double a, double b, double p, double t_l, double t_end, int steps) {
  const auto f = [&](double t, double y) { return -(a * y + b) / (1.0 + p * t); };
  const double dt = (t_end - t_l) / steps;
  double y = 1.0;
  double t = t_l;
  for (int i = 0; i < steps; ++i) {
    const double k1 = f(t, y);
    const double k2 = f(t + dt / 2, y + dt / 2 * k1);
    const double k3 = f(t + dt / 2, y + dt / 2 * k2);
    const double k4 = f(t + dt, y + dt * k3);
    y += dt * (k1 + 2 * k2 + 2 * k3 + k4) / 6;
    t = t_l + dt * (i + 1);
  }
  return y;
}

/// Random alloy with distinct phase capacities and a trial alpha_sl in
/// [alpha_s / 2, 2 alpha_l] that keeps a away from zero.
struct RandomAlloy {
  MaterialProperties material;
  double alpha_sl = 0.0;
};

inline RandomAlloy random_alloy(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (;;) {
    MaterialProperties m;
    m.cp_solid = 300.0 + 900.0 * u(rng);
    m.cp_liquid = 300.0 + 1200.0 * u(rng);
    m.kappa_solid = 5.0 + 60.0 * u(rng);
    m.kappa_liquid = 5.0 + 60.0 * u(rng);
    m.density = 2000.0 + 8000.0 * u(rng);
    m.latent_heat = 1e5 + 4e5 * u(rng);
    m.t_solidus = 400.0 + 1200.0 * u(rng);
    m.t_liquidus = m.t_solidus + 10.0 + 150.0 * u(rng);
    if (std::abs(m.cp_liquid - m.cp_solid) < 20.0) continue;
    const auto phases = phase_diffusivities(m);
    const double lo = 0.5 * phases.solid;
    const double hi = 2.0 * phases.liquid;
    if (!(hi > lo)) continue;
    const double alpha = lo * std::pow(hi / lo, u(rng));
    const auto c = ode_coefficients(m, alpha);
    if (std::abs(c.a) < 1e-3) continue;
    if (!(1.0 + c.p * m.t_solidus > 0.0 && 1.0 + c.p * m.t_liquidus > 0.0)) continue;
    return {m, alpha};
  }
}

}  // namespace mushybench::testing
