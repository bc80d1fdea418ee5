#pragma once

// Implicit apparent-capacity finite-difference solver on a uniform 1-D grid.
// Capacity and conductivity are frozen at the old time level; interface
// conductivities are harmonic means; both ends are Dirichlet.

#include <chrono>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mushybench/error.hpp"
#include "mushybench/material.hpp"
#include "mushybench/tridiagonal.hpp"

namespace mushybench {

struct GridSpec {
  double length = 0.5;  // m
  int nodes = 500;      // N; nodes are 0..N
  double tau = 0.1;     // s
  double t_end = 500.0;  // s
  std::vector<double> sample_times;

  double spacing() const { return length / nodes; }
  long steps() const { return std::lround(t_end / tau); }
};

inline void validate(const GridSpec& g) {
  if (!(g.length > 0.0)) throw ConfigurationError("grid: length must be positive");
  if (g.nodes < 10) throw ConfigurationError("grid: need N >= 10");
  if (!(g.tau > 0.0)) throw ConfigurationError("grid: tau must be positive");
  if (!(g.t_end >= g.tau)) throw ConfigurationError("grid: t_end must be >= tau");
  for (const double t : g.sample_times) {
    if (!(t >= 0.0 && t <= g.t_end)) {
      throw ConfigurationError("grid: sample time " + std::to_string(t) + " outside [0, t_end]");
    }
  }
}

struct FieldState {
  std::vector<double> temperature;  // N + 1 nodal values, C
  double t = 0.0;
  long step_index = 0;
};

/// T = T_init everywhere except node 0, which starts at the wall value.
inline FieldState initial_state(const GridSpec& g, double t_out, double t_init) {
  FieldState s;
  s.temperature.assign(static_cast<std::size_t>(g.nodes) + 1, t_init);
  s.temperature.front() = t_out;
  return s;
}

inline double harmonic_mean(double a, double b) { return 2.0 * a * b / (a + b); }

/// System for the N - 1 interior nodes. Row r corresponds to node r + 1; the
/// Dirichlet values are folded into the first and last right-hand sides.
inline TridiagonalSystem<double> assemble_step(const FieldState& state, const MaterialProperties& m,
                                               const LiquidFractionModel& model, const GridSpec& g) {
  const auto& temp = state.temperature;
  const std::size_t n_nodes = temp.size();
  if (n_nodes < 3) throw ConfigurationError("assemble_step: need at least 3 nodes");
  const double h = g.spacing();
  const double r = g.tau / (h * h);

  std::vector<double> kappa(n_nodes);
  for (std::size_t j = 0; j < n_nodes; ++j) {
    kappa[j] = conductivity(m, model, temp[j]);
    if (!std::isfinite(kappa[j])) throw AssemblyError("assemble_step: non-finite conductivity", j);
  }

  TridiagonalSystem<double> sys(n_nodes - 2);
  for (std::size_t i = 1; i + 1 < n_nodes; ++i) {
    const double cap = m.density * apparent_capacity(m, model, temp[i]);
    if (!std::isfinite(cap) || !(cap > 0.0)) {
      throw AssemblyError("assemble_step: bad apparent capacity at node " + std::to_string(i), i);
    }
    const double west = r * harmonic_mean(kappa[i - 1], kappa[i]);
    const double east = r * harmonic_mean(kappa[i], kappa[i + 1]);
    const std::size_t row = i - 1;
    sys.lower[row] = west;
    sys.upper[row] = east;
    sys.diag[row] = -(west + east + cap);
    sys.rhs[row] = -cap * temp[i];
  }
  sys.rhs.front() -= sys.lower.front() * temp.front();
  sys.rhs.back() -= sys.upper.back() * temp.back();
  return sys;
}

/// One implicit step of length tau.
inline FieldState step(const FieldState& state, const MaterialProperties& m,
                       const LiquidFractionModel& model, const GridSpec& g) {
  const auto interior = solve_tridiagonal(assemble_step(state, m, model, g));
  FieldState next;
  next.temperature.resize(state.temperature.size());
  next.temperature.front() = state.temperature.front();
  next.temperature.back() = state.temperature.back();
  for (std::size_t i = 0; i < interior.size(); ++i) {
    if (!std::isfinite(interior[i])) {
      throw SolverError("step: non-finite temperature at node " + std::to_string(i + 1));
    }
    next.temperature[i + 1] = interior[i];
  }
  next.step_index = state.step_index + 1;
  next.t = static_cast<double>(next.step_index) * g.tau;
  return next;
}

struct FrontHit {
  double x = 0.0;
  bool degenerate = false;  // flat interval at the target; x is its midpoint
};

/// First interval from x = 0 with T_i <= target <= T_{i+1}, linearly
/// interpolated. nullopt when no interval brackets the target.
inline std::optional<FrontHit> locate_front(std::span<const double> temperature, double spacing,
                                            double target) {
  for (std::size_t i = 0; i + 1 < temperature.size(); ++i) {
    const double lo = temperature[i];
    const double hi = temperature[i + 1];
    if (!(lo <= target && target <= hi)) continue;
    const double x0 = spacing * static_cast<double>(i);
    if (hi == lo) return FrontHit{x0 + 0.5 * spacing, true};
    return FrontHit{x0 + spacing * (target - lo) / (hi - lo), false};
  }
  return std::nullopt;
}

struct FrontSample {
  double t = 0.0;
  double x_solidus = 0.0;
  double x_liquidus = 0.0;
  bool found_solidus = false;
  bool found_liquidus = false;
};

using FrontTrace = std::vector<FrontSample>;

inline FrontSample sample_fronts(const FieldState& s, const MaterialProperties& m, double spacing) {
  FrontSample out;
  out.t = s.t;
  if (const auto hit = locate_front(s.temperature, spacing, m.t_solidus)) {
    out.x_solidus = hit->x;
    out.found_solidus = true;
  }
  if (const auto hit = locate_front(s.temperature, spacing, m.t_liquidus)) {
    out.x_liquidus = hit->x;
    out.found_liquidus = true;
  }
  return out;
}

struct Profile {
  double requested_time = 0.0;
  double t = 0.0;  // time of the captured step
  std::vector<double> temperature;
};

struct RunResult {
  FrontTrace trace;
  std::vector<Profile> profiles;
  FieldState final_state;
};

struct RunOptions {
  std::optional<double> wall_clock_budget;  // seconds
};

/// Thrown when a run exceeds its wall-clock budget; carries what was computed.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, RunResult partial)
      : Error(what), partial(std::move(partial)) {}
  RunResult partial;
};

/// Marches from t = 0 to t_end, tracing both fronts every step and capturing
/// profiles at the steps nearest to the sample times.
inline RunResult run(const MaterialProperties& m, const LiquidFractionModel& model,
                     const GridSpec& g, double t_out, double t_init, const RunOptions& options = {}) {
  validate(m);
  validate(g);
  if (!(t_out < m.t_solidus && t_init > m.t_liquidus)) {
    throw ConfigurationError("run: need T_out < T_s < T_l < T_init");
  }
  const double h = g.spacing();
  const long n_steps = g.steps();
  std::vector<long> sample_steps;
  for (const double ts : g.sample_times) sample_steps.push_back(std::lround(ts / g.tau));

  const auto started = std::chrono::steady_clock::now();
  RunResult result;
  result.trace.reserve(static_cast<std::size_t>(n_steps) + 1);
  FieldState state = initial_state(g, t_out, t_init);

  const auto capture = [&](const FieldState& s) {
    for (std::size_t k = 0; k < sample_steps.size(); ++k) {
      if (sample_steps[k] == s.step_index) {
        result.profiles.push_back({g.sample_times[k], s.t, s.temperature});
      }
    }
  };

  result.trace.push_back(sample_fronts(state, m, h));
  capture(state);
  while (state.step_index < n_steps) {
    state = step(state, m, model, g);
    result.trace.push_back(sample_fronts(state, m, h));
    capture(state);
    if (options.wall_clock_budget) {
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
      if (elapsed.count() > *options.wall_clock_budget) {
        result.final_state = state;
        throw BudgetExceeded("run: wall-clock budget exceeded at t = " + std::to_string(state.t),
                             std::move(result));
      }
    }
  }
  result.final_state = std::move(state);
  return result;
}

}  // namespace mushybench
