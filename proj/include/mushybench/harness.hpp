#pragma once

// Benchmark orchestration: linearize, solve the exact problem, run the
// finite-difference solver and compare the two.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "mushybench/error.hpp"
#include "mushybench/fdm.hpp"
#include "mushybench/linearization.hpp"
#include "mushybench/material.hpp"
#include "mushybench/similarity.hpp"

namespace mushybench {

/// Acceptance thresholds, in percent, and the time window they apply to.
struct Tolerances {
  double front_error_pct = 2.0;
  double temperature_error_pct = 1.0;
  double window_start = 50.0;  // s
  double window_end = 500.0;   // s
};

struct Scenario {
  MaterialProperties material;
  double t_out = 800.0;    // C
  double t_init = 1650.0;  // C
  GridSpec grid;
  Tolerances tolerances;
  std::filesystem::path output_dir;
};

/// VT3-1 benchmark: d = 0.5 m, N = 500, tau = 0.1 s, 500 s, profiles at 20 s and 500 s.
inline Scenario default_scenario(MaterialProperties material) {
  Scenario s;
  s.material = std::move(material);
  s.grid.length = 0.5;
  s.grid.nodes = 500;
  s.grid.tau = 0.1;
  s.grid.t_end = 500.0;
  s.grid.sample_times = {20.0, 500.0};
  return s;
}

inline double percent_error(double numeric, double exact) { return (numeric - exact) / exact * 100.0; }

struct FrontErrorRow {
  double t = 0.0;
  double solidus_pct = 0.0;
  double liquidus_pct = 0.0;
};

struct FrontErrorSeries {
  std::vector<FrontErrorRow> rows;
  std::size_t skipped = 0;  // t = 0 or a front not found
};

/// Percentage front-position errors. A trace entry becomes a row only when
/// t > 0 and both fronts were found; every other entry counts as skipped.
inline FrontErrorSeries front_error_series(const FrontTrace& trace, const StefanRoots& roots) {
  if (trace.empty()) throw ReportError("front_error_series: empty trace");
  FrontErrorSeries out;
  out.rows.reserve(trace.size());
  for (const auto& s : trace) {
    if (!(s.t > 0.0) || !s.found_solidus || !s.found_liquidus) {
      ++out.skipped;
      continue;
    }
    const auto exact = front_position(roots, s.t);
    out.rows.push_back({s.t, percent_error(s.x_solidus, exact.solidus),
                        percent_error(s.x_liquidus, exact.liquidus)});
  }
  return out;
}

struct SeriesSummary {
  double max_abs = 0.0;
  double mean_abs = 0.0;
  std::size_t count = 0;
};

struct FrontErrorSummary {
  SeriesSummary solidus;
  SeriesSummary liquidus;
};

/// Statistics over rows with t >= t_min.
inline FrontErrorSummary summarize(const FrontErrorSeries& series, double t_min) {
  FrontErrorSummary out;
  const auto add = [](SeriesSummary& s, double v) {
    s.max_abs = std::max(s.max_abs, std::abs(v));
    s.mean_abs += std::abs(v);
    ++s.count;
  };
  for (const auto& r : series.rows) {
    if (r.t < t_min) continue;
    add(out.solidus, r.solidus_pct);
    add(out.liquidus, r.liquidus_pct);
  }
  for (auto* s : {&out.solidus, &out.liquidus}) {
    if (s->count) s->mean_abs /= static_cast<double>(s->count);
  }
  return out;
}

/// Largest |eps_x| of either front over rows with t in [t_lo, t_hi].
inline double max_front_error(const FrontErrorSeries& series, double t_lo, double t_hi) {
  double worst = 0.0;
  for (const auto& r : series.rows) {
    if (r.t < t_lo || r.t > t_hi) continue;
    worst = std::max({worst, std::abs(r.solidus_pct), std::abs(r.liquidus_pct)});
  }
  return worst;
}

struct TemperatureErrorRow {
  double x = 0.0;
  double pct = 0.0;
};

/// Node-wise (T_num - T_exact) / T_exact in percent. Nodes where the exact
/// temperature is exactly zero are left out.
inline std::vector<TemperatureErrorRow> temperature_error_profile(std::span<const double> numeric,
                                                                  double spacing,
                                                                  const ExactSolution& sol,
                                                                  double t) {
  std::vector<TemperatureErrorRow> rows;
  rows.reserve(numeric.size());
  for (std::size_t i = 0; i < numeric.size(); ++i) {
    const double x = spacing * static_cast<double>(i);
    const double exact = temperature_field(sol, x, t);
    if (exact == 0.0) continue;
    rows.push_back({x, percent_error(numeric[i], exact)});
  }
  return rows;
}

inline double max_abs_error(std::span<const TemperatureErrorRow> rows) {
  double worst = 0.0;
  for (const auto& r : rows) worst = std::max(worst, std::abs(r.pct));
  return worst;
}

/// Anything that runs the numeric model like fdm::run.
template <typename F>
concept FieldRunner = std::invocable<const F&, const MaterialProperties&,
                                     const LiquidFractionModel&, const GridSpec&, double, double> &&
                      std::convertible_to<std::invoke_result_t<const F&, const MaterialProperties&,
                                                               const LiquidFractionModel&,
                                                               const GridSpec&, double, double>,
                                          RunResult>;

struct DefaultRunner {
  RunResult operator()(const MaterialProperties& m, const LiquidFractionModel& model,
                       const GridSpec& g, double t_out, double t_init) const {
    return run(m, model, g, t_out, t_init);
  }
};

struct ConvergenceRow {
  int level = 0;
  double h = 0.0;
  double tau = 0.0;
  double front_error_pct = 0.0;        // max of |eps_x| over both fronts at t_end
  double temperature_error_pct = 0.0;  // max |eps_T| at t_end
};

/// Runs the scenario at `levels` resolutions, halving h and tau together.
template <FieldRunner Runner = DefaultRunner>
std::vector<ConvergenceRow> convergence_study(const Scenario& scenario, const ExactSolution& sol,
                                              int levels, const Runner& runner = {}) {
  if (levels < 1) throw ConfigurationError("convergence_study: levels must be >= 1");
  std::vector<ConvergenceRow> table;
  GridSpec grid = scenario.grid;
  grid.sample_times = {grid.t_end};
  for (int level = 0; level < levels; ++level) {
    const RunResult result =
        runner(scenario.material, sol.model(), grid, scenario.t_out, scenario.t_init);
    if (result.trace.empty() || result.profiles.empty()) {
      throw ReportError("convergence_study: runner returned no trace or profile");
    }
    const auto& last = result.trace.back();
    if (!last.found_solidus || !last.found_liquidus) {
      throw ReportError("convergence_study: fronts not found at t_end");
    }
    const auto exact = front_position(sol.roots(), last.t);
    const double front = std::max(std::abs(percent_error(last.x_solidus, exact.solidus)),
                                  std::abs(percent_error(last.x_liquidus, exact.liquidus)));
    const auto& profile = result.profiles.back();
    const auto temp_rows =
        temperature_error_profile(profile.temperature, grid.spacing(), sol, profile.t);
    table.push_back({level, grid.spacing(), grid.tau, front, max_abs_error(temp_rows)});
    grid.nodes *= 2;
    grid.tau /= 2.0;
  }
  return table;
}

struct FractionCurveRow {
  double t = 0.0;
  double analytical = 0.0;
  double reference = 0.0;  // empirical alloy curve
  double power = 0.0;
};

/// `points` uniformly spaced temperatures on [T_s, T_l] (endpoints included).
inline std::vector<FractionCurveRow> fraction_curve(const MaterialProperties& m,
                                                    const LiquidFractionModel& model,
                                                    double exponent = 1.5, int points = 200) {
  if (!m.t_melt) throw ConfigurationError("fraction_curve: T_m is required");
  if (points < 2) throw ConfigurationError("fraction_curve: need at least 2 points");
  std::vector<FractionCurveRow> rows;
  rows.reserve(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double t = i + 1 == points
                         ? m.t_liquidus
                         : m.t_solidus + (m.t_liquidus - m.t_solidus) * i / (points - 1);
    rows.push_back({t, liquid_fraction(model, t), reference_fraction_vt(m, t),
                    reference_fraction_power(m, t, exponent)});
  }
  return rows;
}

struct TemperatureErrorSet {
  double requested_time = 0.0;
  double t = 0.0;
  std::vector<TemperatureErrorRow> rows;
  double max_abs = 0.0;
};

struct AcceptanceVerdict {
  double front_error_max = 0.0;  // over the tolerance window
  bool front_ok = false;
  bool temperature_ok = false;
  bool passed() const { return front_ok && temperature_ok; }
};

/// Everything the benchmark comparison produces.
struct BenchmarkReport {
  LinearizationResult linearization;
  std::optional<ExactSolution> exact;
  RunResult numeric;
  FrontErrorSeries front_errors;
  FrontErrorSummary front_summary;  // excludes the first 10 steps
  std::vector<TemperatureErrorSet> temperature_errors;
  std::vector<ConvergenceRow> convergence;
  std::vector<FractionCurveRow> fractions;  // empty when T_m is absent
  double max_fraction_gap = 0.0;            // max |lambda - reference|
  AcceptanceVerdict verdict;
};

inline AcceptanceVerdict evaluate(const BenchmarkReport& report, const Tolerances& tol) {
  AcceptanceVerdict v;
  v.front_error_max = max_front_error(report.front_errors, tol.window_start, tol.window_end);
  v.front_ok = v.front_error_max <= tol.front_error_pct;
  v.temperature_ok = std::all_of(report.temperature_errors.begin(), report.temperature_errors.end(),
                                 [&](const auto& e) { return e.max_abs <= tol.temperature_error_pct; });
  return v;
}

inline BenchmarkReport run_benchmark(const Scenario& scenario, int convergence_levels = 2) {
  validate(scenario.material);
  validate(scenario.grid);
  BenchmarkReport report;
  report.linearization = solve_mushy_diffusivity(scenario.material);
  report.exact.emplace(scenario.material, report.linearization, scenario.t_out, scenario.t_init);
  const ExactSolution& sol = *report.exact;

  report.numeric =
      run(scenario.material, sol.model(), scenario.grid, scenario.t_out, scenario.t_init);
  report.front_errors = front_error_series(report.numeric.trace, sol.roots());
  report.front_summary = summarize(report.front_errors, 10.0 * scenario.grid.tau);

  for (const auto& profile : report.numeric.profiles) {
    if (!(profile.t > 0.0)) continue;
    TemperatureErrorSet set{profile.requested_time, profile.t,
                            temperature_error_profile(profile.temperature,
                                                      scenario.grid.spacing(), sol, profile.t),
                            0.0};
    set.max_abs = max_abs_error(set.rows);
    report.temperature_errors.push_back(std::move(set));
  }

  if (convergence_levels > 0) {
    report.convergence = convergence_study(scenario, sol, convergence_levels);
  }
  if (scenario.material.t_melt) {
    report.fractions = fraction_curve(scenario.material, sol.model());
    for (const auto& r : report.fractions) {
      report.max_fraction_gap = std::max(report.max_fraction_gap, std::abs(r.analytical - r.reference));
    }
  }
  report.verdict = evaluate(report, scenario.tolerances);
  return report;
}

}  // namespace mushybench
