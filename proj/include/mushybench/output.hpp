#pragma once

// CSV and JSON writers for every artifact the tools emit. Numbers are
// written in shortest round-trip form so repeated runs are byte-identical.

#include <filesystem>
#include <fstream>
#include <span>
#include <string>

#include <json.hpp>

#include "mushybench/csv.hpp"
#include "mushybench/fdm.hpp"
#include "mushybench/harness.hpp"
#include "mushybench/linearization.hpp"
#include "mushybench/material_json.hpp"
#include "mushybench/similarity.hpp"

namespace mushybench {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

inline void write_json(const fs::path& path, const ordered_json& doc) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

inline void write_scan_csv(const fs::path& path, std::span<const ScanPoint> scan) {
  CsvWriter csv(path, {"alpha_candidate", "lambda_at_Ts"});
  for (const auto& p : scan) csv.row(p.alpha, p.fraction_at_solidus);
}

inline ordered_json linearization_json(const MaterialProperties& m, const LinearizationResult& r) {
  ordered_json doc;
  doc["material"] = to_json(m);
  doc["alpha_s"] = r.alpha_s;
  doc["alpha_sl"] = r.alpha_sl;
  doc["alpha_l"] = r.alpha_l;
  doc["a"] = r.model.a;
  doc["b"] = r.model.b;
  doc["p"] = r.model.p;
  doc["residual"] = r.residual;
  doc["bracket"] = {r.bracket_lo, r.bracket_hi};
  doc["eutectic_experimental"] = is_eutectic(m);
  return doc;
}

inline ordered_json exact_json(const ExactSolution& sol) {
  const auto& h = sol.enthalpies();
  const auto& k = sol.roots();
  ordered_json doc = linearization_json(sol.material(), sol.linearization());
  doc["T_out"] = sol.t_out();
  doc["T_init"] = sol.t_init();
  doc["H_out"] = h.outer;
  doc["H_init"] = h.initial;
  doc["H_s"] = h.solidus;
  doc["H_l"] = h.liquidus;
  doc["k_s"] = k.k_s;
  doc["k_l"] = k.k_l;
  doc["residual_s"] = k.residual_s;
  doc["residual_l"] = k.residual_l;
  doc["residual_s_relative"] = std::abs(k.residual_s) / k.scale_s;
  doc["residual_l_relative"] = std::abs(k.residual_l) / k.scale_l;
  return doc;
}

inline void write_exact_profile_csv(const fs::path& path, std::span<const ProfileRow> rows) {
  CsvWriter csv(path, {"x_m", "t_s", "H_J_per_m3", "T_C", "dTdx_K_per_m", "dTdt_K_per_s", "region"});
  for (const auto& r : rows) {
    csv.row(r.x, r.t, r.enthalpy, r.temperature, r.gradient, r.cooling_rate, to_string(r.region));
  }
}

inline void write_front_trace_csv(const fs::path& path, const FrontTrace& trace) {
  CsvWriter csv(path, {"t_s", "Xs_m", "Xl_m"});
  for (const auto& s : trace) {
    csv.row(s.t, s.found_solidus ? format_number(s.x_solidus) : std::string(),
            s.found_liquidus ? format_number(s.x_liquidus) : std::string());
  }
}

inline void write_profile_csv(const fs::path& path, std::span<const double> temperature,
                              double spacing) {
  CsvWriter csv(path, {"x_m", "T_C"});
  for (std::size_t i = 0; i < temperature.size(); ++i) {
    csv.row(spacing * static_cast<double>(i), temperature[i]);
  }
}

inline std::string profile_file_name(double t) { return "profile_t" + time_label(t) + ".csv"; }

inline void write_front_errors_csv(const fs::path& path, const FrontErrorSeries& series) {
  CsvWriter csv(path, {"t_s", "eps_xs_pct", "eps_xl_pct"});
  for (const auto& r : series.rows) csv.row(r.t, r.solidus_pct, r.liquidus_pct);
}

inline void write_temperature_errors_csv(const fs::path& path,
                                         std::span<const TemperatureErrorRow> rows) {
  CsvWriter csv(path, {"x_m", "eps_T_pct"});
  for (const auto& r : rows) csv.row(r.x, r.pct);
}

inline void write_convergence_csv(const fs::path& path, std::span<const ConvergenceRow> rows) {
  CsvWriter csv(path, {"level", "h_m", "tau_s", "max_eps_x_pct", "max_eps_T_pct"});
  for (const auto& r : rows) {
    csv.row(static_cast<double>(r.level), r.h, r.tau, r.front_error_pct, r.temperature_error_pct);
  }
}

inline void write_fraction_curve_csv(const fs::path& path, std::span<const FractionCurveRow> rows) {
  CsvWriter csv(path, {"T_C", "lambda_analytical", "lambda_vt", "lambda_n1.5"});
  for (const auto& r : rows) csv.row(r.t, r.analytical, r.reference, r.power);
}

inline ordered_json summary_json(const Scenario& scenario, const BenchmarkReport& report) {
  ordered_json doc = exact_json(*report.exact);
  const auto& g = scenario.grid;
  doc["grid"] = {{"length", g.length}, {"nodes", g.nodes}, {"tau", g.tau}, {"t_end", g.t_end}};
  doc["note"] = "summary statistics exclude t < 10 tau (numeric front still forming)";
  doc["front_errors"] = {
      {"rows", report.front_errors.rows.size()},
      {"skipped", report.front_errors.skipped},
      {"solidus_max_abs_pct", report.front_summary.solidus.max_abs},
      {"solidus_mean_abs_pct", report.front_summary.solidus.mean_abs},
      {"liquidus_max_abs_pct", report.front_summary.liquidus.max_abs},
      {"liquidus_mean_abs_pct", report.front_summary.liquidus.mean_abs},
  };
  ordered_json temps = ordered_json::array();
  for (const auto& e : report.temperature_errors) {
    temps.push_back({{"t", e.t}, {"max_abs_pct", e.max_abs}});
  }
  doc["temperature_errors"] = temps;
  ordered_json conv = ordered_json::array();
  for (const auto& r : report.convergence) {
    conv.push_back({{"level", r.level},
                    {"h", r.h},
                    {"tau", r.tau},
                    {"max_eps_x_pct", r.front_error_pct},
                    {"max_eps_T_pct", r.temperature_error_pct}});
  }
  doc["convergence"] = conv;
  if (!report.fractions.empty()) doc["max_fraction_gap_vs_reference"] = report.max_fraction_gap;
  const auto& tol = scenario.tolerances;
  doc["acceptance"] = {
      {"front_error_bound_pct", tol.front_error_pct},
      {"temperature_error_bound_pct", tol.temperature_error_pct},
      {"window", {tol.window_start, tol.window_end}},
      {"front_error_max_pct", report.verdict.front_error_max},
      {"front_ok", report.verdict.front_ok},
      {"temperature_ok", report.verdict.temperature_ok},
      {"passed", report.verdict.passed()},
  };
  return doc;
}

/// Writes every comparison artifact into `dir`.
inline void write_report(const fs::path& dir, const Scenario& scenario,
                         const BenchmarkReport& report) {
  fs::create_directories(dir);
  const double h = scenario.grid.spacing();
  write_scan_csv(dir / "alpha_scan.csv", report.linearization.scan);
  write_front_trace_csv(dir / "front_trace.csv", report.numeric.trace);
  for (const auto& p : report.numeric.profiles) {
    write_profile_csv(dir / profile_file_name(p.requested_time), p.temperature, h);
  }
  write_front_errors_csv(dir / "front_errors.csv", report.front_errors);
  for (const auto& e : report.temperature_errors) {
    write_temperature_errors_csv(dir / ("temp_errors_t" + time_label(e.requested_time) + ".csv"),
                                 e.rows);
  }
  write_convergence_csv(dir / "convergence.csv", report.convergence);
  if (!report.fractions.empty()) write_fraction_curve_csv(dir / "fraction_curve.csv", report.fractions);
  write_json(dir / "summary.json", summary_json(scenario, report));
}

}  // namespace mushybench
