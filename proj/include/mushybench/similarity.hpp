#pragma once

// Exact similarity solution of the linearized enthalpy equation on the
// half-line: a cooled wall at x = 0, fronts at X_s = k_s sqrt(t) and
// X_l = k_l sqrt(t), and erf/erfc profiles in the three regions.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mushybench/error.hpp"
#include "mushybench/linearization.hpp"
#include "mushybench/material.hpp"

namespace mushybench {

/// erf(b) - erf(a), evaluated through erfc when both arguments sit in the tail.
inline double erf_difference(double a, double b) {
  if (a > b) return -erf_difference(b, a);
  if (a > 1.0) return std::erfc(a) - std::erfc(b);
  if (b < -1.0) return std::erfc(-b) - std::erfc(-a);
  return std::erf(b) - std::erf(a);
}

struct BoundaryEnthalpies {
  double outer = 0.0;     // H_out at x = 0
  double initial = 0.0;   // H_init, far field and t = 0
  double solidus = 0.0;   // H_s = rho C_s T_s
  double liquidus = 0.0;  // H_l = rho (C_l T_l + L)
};

inline BoundaryEnthalpies boundary_enthalpies(const MaterialProperties& m,
                                              const LiquidFractionModel& model, double t_out,
                                              double t_init) {
  if (!(t_out < m.t_solidus)) throw ConfigurationError("boundary: T_out < T_s violated");
  if (!(t_init > m.t_liquidus)) throw ConfigurationError("boundary: T_init > T_l violated");
  return {enthalpy(m, model, t_out), enthalpy(m, model, t_init), solidus_enthalpy(m),
          liquidus_enthalpy(m)};
}

/// Everything the two interface equations depend on.
struct InterfaceProblem {
  MaterialProperties material;
  double alpha_s = 0.0;
  double alpha_sl = 0.0;
  double alpha_l = 0.0;
  BoundaryEnthalpies enthalpies;
};

struct InterfaceResiduals {
  double solidus = 0.0;   // flux balance at X_s, including the eutectic Stefan term
  double liquidus = 0.0;  // flux balance at X_l
  double solidus_scale = 0.0;   // magnitude of the solid-side flux term
  double liquidus_scale = 0.0;  // magnitude of the mush-side flux term
};

namespace detail {

// Unchecked residuals; may return inf/nan near the singular edge k_s -> k_l.
inline InterfaceResiduals raw_interface_residuals(const InterfaceProblem& pr, double k_s,
                                                  double k_l) {
  const auto& h = pr.enthalpies;
  const double sa_s = std::sqrt(pr.alpha_s);
  const double sa_sl = std::sqrt(pr.alpha_sl);
  const double sa_l = std::sqrt(pr.alpha_l);
  const double zs_s = k_s / (2.0 * sa_s);
  const double zs_sl = k_s / (2.0 * sa_sl);
  const double zl_sl = k_l / (2.0 * sa_sl);
  const double zl_l = k_l / (2.0 * sa_l);
  const double mush_den = erf_difference(zs_sl, zl_sl);

  const double solid_flux = sa_s * (h.solidus - h.outer) * std::exp(-zs_s * zs_s) / std::erf(zs_s);
  const double mush_flux_s = sa_sl * (h.liquidus - h.solidus) * std::exp(-zs_sl * zs_sl) / mush_den;
  const double stefan = 0.5 * std::sqrt(std::numbers::pi) * pr.material.density *
                        pr.material.solidus_fraction * pr.material.latent_heat * k_s;
  const double mush_flux_l = sa_sl * (h.liquidus - h.solidus) * std::exp(-zl_sl * zl_sl) / mush_den;
  const double liquid_flux =
      sa_l * (h.initial - h.liquidus) * std::exp(-zl_l * zl_l) / std::erfc(zl_l);

  return {solid_flux - mush_flux_s - stefan, mush_flux_l - liquid_flux, std::abs(solid_flux),
          std::abs(mush_flux_l)};
}

}  // namespace detail

inline InterfaceResiduals interface_residuals(const InterfaceProblem& pr, double k_s, double k_l) {
  if (!(k_s > 0.0 && k_s < k_l)) throw DomainError("interface residuals: need 0 < k_s < k_l");
  const auto r = detail::raw_interface_residuals(pr, k_s, k_l);
  if (!std::isfinite(r.solidus) || !std::isfinite(r.liquidus)) {
    throw EvaluationError("interface residuals: non-finite value at k_s = " + std::to_string(k_s) +
                          ", k_l = " + std::to_string(k_l));
  }
  return r;
}

struct StefanRoots {
  double k_s = 0.0;  // m/s^(1/2)
  double k_l = 0.0;  // m/s^(1/2)
  double residual_s = 0.0;
  double residual_l = 0.0;
  double scale_s = 0.0;
  double scale_l = 0.0;
};

struct FrontSearch {
  int scan_points = 200;
  double lower_fraction = 1e-6;  // scan starts at k_max * lower_fraction
  double relative_tolerance = 1e-9;  // residual / leading term
};

/// Upper end of the front-coefficient search, 6 sqrt(max alpha).
inline double front_search_limit(const InterfaceProblem& pr) {
  return 6.0 * std::sqrt(std::max({pr.alpha_s, pr.alpha_sl, pr.alpha_l}));
}

/// Liquidus coefficient solving the liquidus flux balance for a trial k_s.
/// The residual tends to +inf as k_l -> k_s; returns nullopt when it stays
/// positive up to k_max.
inline std::optional<double> solve_liquidus_coefficient(const InterfaceProblem& pr, double k_s,
                                                        double k_max) {
  const auto r = [&](double k_l) { return detail::raw_interface_residuals(pr, k_s, k_l).liquidus; };
  if (!(k_max > k_s)) return std::nullopt;
  const double r_hi = r(k_max);
  if (std::isnan(r_hi) || r_hi > 0.0) return std::nullopt;
  if (r_hi == 0.0) return k_max;
  double lo = k_s;
  double hi = k_max;
  for (;;) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double v = r(mid);
    if (std::isnan(v)) return std::nullopt;
    if (v == 0.0) return mid;
    (v > 0.0 ? lo : hi) = mid;
  }
  return hi;
}

/// Nested bracketed solve: inner bisection for k_l given k_s, outer geometric
/// scan plus bisection on the solidus residual.
inline StefanRoots solve_front_coefficients(const InterfaceProblem& pr,
                                            const FrontSearch& search = {}) {
  if (search.scan_points < 2 || !(search.lower_fraction > 0.0 && search.lower_fraction < 1.0)) {
    throw ConfigurationError("front search: need >= 2 points and 0 < lower_fraction < 1");
  }
  const double k_max = front_search_limit(pr);
  const auto outer = [&](double k_s) {
    const auto k_l = solve_liquidus_coefficient(pr, k_s, k_max);
    if (!k_l) return std::numeric_limits<double>::quiet_NaN();
    return detail::raw_interface_residuals(pr, k_s, *k_l).solidus;
  };

  std::vector<std::pair<double, double>> grid;
  const double k_min = k_max * search.lower_fraction;
  for (int i = 0; i < search.scan_points; ++i) {
    // The last point stays below k_max so an inner bracket can exist.
    const double frac = static_cast<double>(i) / search.scan_points;
    const double k_s = k_min * std::pow(k_max / k_min, frac);
    grid.emplace_back(k_s, outer(k_s));
  }

  std::vector<std::pair<double, double>> brackets;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double f0 = grid[i].second;
    const double f1 = grid[i + 1].second;
    if (!std::isfinite(f0) || !std::isfinite(f1)) continue;
    if (f0 == 0.0) {
      brackets.emplace_back(grid[i].first, grid[i].first);
    } else if ((f0 < 0.0) != (f1 < 0.0) && f1 != 0.0) {
      brackets.emplace_back(grid[i].first, grid[i + 1].first);
    }
  }
  if (brackets.empty()) {
    throw RootNotFound("solve_front_coefficients: solidus residual has no sign change for k_s in (" +
                           std::to_string(k_min) + ", " + std::to_string(k_max) + ")",
                       std::move(grid));
  }
  if (brackets.size() > 1) {
    throw AmbiguityError("solve_front_coefficients: " + std::to_string(brackets.size()) +
                             " candidate k_s brackets",
                         std::move(brackets));
  }

  double lo = brackets.front().first;
  double hi = brackets.front().second;
  double f_lo = outer(lo);
  for (;;) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double v = outer(mid);
    if (std::isnan(v)) break;
    if (v == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((v < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = v;
    } else {
      hi = mid;
    }
  }
  const double k_s = std::abs(outer(lo)) <= std::abs(outer(hi)) ? lo : hi;
  const auto k_l = solve_liquidus_coefficient(pr, k_s, k_max);
  if (!k_l) {
    throw RootNotFound("solve_front_coefficients: inner liquidus solve failed at the root",
                       std::move(grid));
  }
  const auto r = interface_residuals(pr, k_s, *k_l);
  if (!(std::abs(r.solidus) <= search.relative_tolerance * r.solidus_scale &&
        std::abs(r.liquidus) <= search.relative_tolerance * r.liquidus_scale)) {
    throw RootNotFound("solve_front_coefficients: residuals above tolerance at the bisection root",
                       std::move(grid));
  }
  return {k_s, *k_l, r.solidus, r.liquidus, r.solidus_scale, r.liquidus_scale};
}

struct FrontPair {
  double solidus = 0.0;
  double liquidus = 0.0;
};

inline FrontPair front_position(const StefanRoots& roots, double t) {
  if (!(t >= 0.0)) throw DomainError("front_position: t must be >= 0");
  const double s = std::sqrt(t);
  return {roots.k_s * s, roots.k_l * s};
}

inline FrontPair front_velocity(const StefanRoots& roots, double t) {
  if (!(t > 0.0)) throw DomainError("front_velocity: t must be > 0");
  const double d = 2.0 * std::sqrt(t);
  return {roots.k_s / d, roots.k_l / d};
}

/// Time a point spends in the mush, (1/k_s^2 - 1/k_l^2) x^2.
inline double local_solidification_time(const StefanRoots& roots, double x) {
  return (1.0 / (roots.k_s * roots.k_s) - 1.0 / (roots.k_l * roots.k_l)) * x * x;
}

/// Solved similarity problem. Immutable after construction.
class ExactSolution {
 public:
  ExactSolution(MaterialProperties material, LinearizationResult linearization, double t_out,
                double t_init, const FrontSearch& search = {})
      : material_(std::move(material)),
        linearization_(std::move(linearization)),
        t_out_(t_out),
        t_init_(t_init),
        enthalpies_(boundary_enthalpies(material_, linearization_.model, t_out, t_init)),
        roots_(solve_front_coefficients(problem(), search)) {}

  const MaterialProperties& material() const { return material_; }
  const LinearizationResult& linearization() const { return linearization_; }
  const LiquidFractionModel& model() const { return linearization_.model; }
  const BoundaryEnthalpies& enthalpies() const { return enthalpies_; }
  const StefanRoots& roots() const { return roots_; }
  double t_out() const { return t_out_; }
  double t_init() const { return t_init_; }

  InterfaceProblem problem() const {
    return {material_, linearization_.alpha_s, linearization_.alpha_sl, linearization_.alpha_l,
            enthalpies_};
  }

 private:
  MaterialProperties material_;
  LinearizationResult linearization_;
  double t_out_;
  double t_init_;
  BoundaryEnthalpies enthalpies_;
  StefanRoots roots_;
};

enum class Region { solid, mush, liquid };

inline const char* to_string(Region r) {
  switch (r) {
    case Region::solid: return "solid";
    case Region::mush: return "mush";
    case Region::liquid: return "liquid";
  }
  return "?";
}

/// Which one-sided limit to take when x sits on a front. `below` is the side
/// towards the cooled wall.
enum class Side { unspecified, below, above };

/// Points within this fraction of X_l of a front count as on the front.
inline constexpr double front_proximity = 1e-12;

namespace detail {

inline void check_point(double x, double t) {
  if (!(x >= 0.0)) throw DomainError("field evaluation: x must be >= 0");
  if (!(t > 0.0)) throw DomainError("field evaluation: t must be > 0");
}

// Region for x at time t. With `need_side`, a point on a front without a
// side is rejected; otherwise the closed mushy interval wins.
inline Region locate_region(const ExactSolution& sol, double x, double t, Side side,
                            bool need_side) {
  check_point(x, t);
  const auto fronts = front_position(sol.roots(), t);
  const double eps = front_proximity * fronts.liquidus;
  const bool on_s = std::abs(x - fronts.solidus) < eps;
  const bool on_l = std::abs(x - fronts.liquidus) < eps;
  if (on_s || on_l) {
    if (side == Side::unspecified) {
      if (need_side) {
        throw AmbiguityError("field evaluation: x is on a front; a side must be given");
      }
      return Region::mush;
    }
    if (on_s) return side == Side::below ? Region::solid : Region::mush;
    return side == Side::below ? Region::mush : Region::liquid;
  }
  if (x < fronts.solidus) return Region::solid;
  if (x <= fronts.liquidus) return Region::mush;
  return Region::liquid;
}

inline double enthalpy_in(const ExactSolution& sol, Region region, double x, double t) {
  const auto& h = sol.enthalpies();
  const auto& lin = sol.linearization();
  const auto& k = sol.roots();
  switch (region) {
    case Region::solid: {
      const double s = 2.0 * std::sqrt(lin.alpha_s);
      return h.outer + (h.solidus - h.outer) * std::erf(x / (s * std::sqrt(t))) / std::erf(k.k_s / s);
    }
    case Region::mush: {
      const double s = 2.0 * std::sqrt(lin.alpha_sl);
      const double zs = k.k_s / s;
      return h.solidus + (h.liquidus - h.solidus) * erf_difference(zs, x / (s * std::sqrt(t))) /
                             erf_difference(zs, k.k_l / s);
    }
    case Region::liquid: {
      const double s = 2.0 * std::sqrt(lin.alpha_l);
      return h.initial -
             (h.initial - h.liquidus) * std::erfc(x / (s * std::sqrt(t))) / std::erfc(k.k_l / s);
    }
  }
  return 0.0;
}

inline double temperature_in(const ExactSolution& sol, Region region, double x, double t) {
  const auto& m = sol.material();
  const double h = enthalpy_in(sol, region, x, t);
  switch (region) {
    case Region::solid: return h / (m.density * m.cp_solid);
    case Region::liquid: return h / (m.density * m.cp_liquid) - m.latent_heat / m.cp_liquid;
    case Region::mush: return temperature_from_enthalpy(m, sol.model(), h);
  }
  return 0.0;
}

// Diffusivity of the region and the amplitude multiplying its error function.
inline std::pair<double, double> region_amplitude(const ExactSolution& sol, Region region) {
  const auto& h = sol.enthalpies();
  const auto& lin = sol.linearization();
  const auto& k = sol.roots();
  switch (region) {
    case Region::solid:
      return {lin.alpha_s, (h.solidus - h.outer) / std::erf(k.k_s / (2.0 * std::sqrt(lin.alpha_s)))};
    case Region::mush: {
      const double s = 2.0 * std::sqrt(lin.alpha_sl);
      return {lin.alpha_sl, (h.liquidus - h.solidus) / erf_difference(k.k_s / s, k.k_l / s)};
    }
    case Region::liquid:
      return {lin.alpha_l,
              (h.initial - h.liquidus) / std::erfc(k.k_l / (2.0 * std::sqrt(lin.alpha_l)))};
  }
  return {0.0, 0.0};
}

// dT/dH in the region at the local temperature.
inline double temperature_per_enthalpy(const ExactSolution& sol, Region region, double x,
                                       double t) {
  const auto& m = sol.material();
  switch (region) {
    case Region::solid: return 1.0 / (m.density * m.cp_solid);
    case Region::liquid: return 1.0 / (m.density * m.cp_liquid);
    case Region::mush: {
      const double temp = temperature_in(sol, region, x, t);
      return 1.0 / (m.density * apparent_capacity(m, sol.model(), temp));
    }
  }
  return 0.0;
}

}  // namespace detail

inline Region region_at(const ExactSolution& sol, double x, double t) {
  return detail::locate_region(sol, x, t, Side::unspecified, false);
}

/// H(x, t), J/m^3. Continuous, so no side is needed on the fronts.
inline double enthalpy_field(const ExactSolution& sol, double x, double t) {
  return detail::enthalpy_in(sol, region_at(sol, x, t), x, t);
}

/// T(x, t), C. The mushy branch inverts the enthalpy numerically.
inline double temperature_field(const ExactSolution& sol, double x, double t) {
  return detail::temperature_in(sol, region_at(sol, x, t), x, t);
}

inline double enthalpy_gradient(const ExactSolution& sol, double x, double t,
                                Side side = Side::unspecified) {
  const Region region = detail::locate_region(sol, x, t, side, true);
  const auto [alpha, amplitude] = detail::region_amplitude(sol, region);
  return amplitude * std::exp(-x * x / (4.0 * alpha * t)) / std::sqrt(std::numbers::pi * alpha * t);
}

/// dT/dx = (dT/dH) dH/dx, K/m.
inline double temperature_gradient(const ExactSolution& sol, double x, double t,
                                   Side side = Side::unspecified) {
  const Region region = detail::locate_region(sol, x, t, side, true);
  const auto [alpha, amplitude] = detail::region_amplitude(sol, region);
  const double dh_dx =
      amplitude * std::exp(-x * x / (4.0 * alpha * t)) / std::sqrt(std::numbers::pi * alpha * t);
  return detail::temperature_per_enthalpy(sol, region, x, t) * dh_dx;
}

/// dT/dt at fixed x, K/s.
inline double cooling_rate(const ExactSolution& sol, double x, double t,
                           Side side = Side::unspecified) {
  const Region region = detail::locate_region(sol, x, t, side, true);
  const auto [alpha, amplitude] = detail::region_amplitude(sol, region);
  const double at = alpha * t;
  const double dh_dt = -amplitude * alpha * x * std::exp(-x * x / (4.0 * at)) /
                       (2.0 * std::sqrt(std::numbers::pi) * at * std::sqrt(at));
  return detail::temperature_per_enthalpy(sol, region, x, t) * dh_dt;
}

/// G_l: liquid-side temperature gradient at the liquidus, K/m.
inline double liquidus_gradient(const ExactSolution& sol, double t) {
  if (!(t > 0.0)) throw DomainError("liquidus_gradient: t must be > 0");
  const auto& m = sol.material();
  const auto& h = sol.enthalpies();
  const double alpha = sol.linearization().alpha_l;
  const double z = sol.roots().k_l / (2.0 * std::sqrt(alpha));
  return (h.initial - h.liquidus) / (m.density * m.cp_liquid * std::erfc(z)) * std::exp(-z * z) /
         std::sqrt(std::numbers::pi * alpha * t);
}

/// Cooling rate at the liquidus, K/s; negative and proportional to 1/t.
inline double liquidus_cooling_rate(const ExactSolution& sol, double t) {
  if (!(t > 0.0)) throw DomainError("liquidus_cooling_rate: t must be > 0");
  const auto& m = sol.material();
  const auto& h = sol.enthalpies();
  const double alpha = sol.linearization().alpha_l;
  const double k_l = sol.roots().k_l;
  const double z = k_l / (2.0 * std::sqrt(alpha));
  return -(h.initial - h.liquidus) / (m.density * m.cp_liquid * std::erfc(z)) * k_l *
         std::exp(-z * z) / (2.0 * std::sqrt(std::numbers::pi * alpha) * t);
}

struct ProfileRow {
  double x = 0.0;
  double t = 0.0;
  double enthalpy = 0.0;
  double temperature = 0.0;
  double gradient = 0.0;
  double cooling_rate = 0.0;
  Region region = Region::solid;
};

/// Samples the exact fields at the given positions. A node lying on a front
/// takes the one-sided limit from the mushy side.
inline std::vector<ProfileRow> exact_profile(const ExactSolution& sol, std::span<const double> xs,
                                             double t) {
  std::vector<ProfileRow> rows;
  rows.reserve(xs.size());
  const auto fronts = front_position(sol.roots(), t);
  for (const double x : xs) {
    const Region region = region_at(sol, x, t);
    Side side = Side::unspecified;
    if (region == Region::mush) {
      side = x - fronts.solidus < fronts.liquidus - x ? Side::above : Side::below;
    }
    rows.push_back({x, t, enthalpy_field(sol, x, t), temperature_field(sol, x, t),
                    temperature_gradient(sol, x, t, side), cooling_rate(sol, x, t, side), region});
  }
  return rows;
}

}  // namespace mushybench
