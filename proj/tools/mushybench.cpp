// mushybench: exact mushy-zone solidification solution vs. the implicit
// apparent-capacity finite-difference scheme.
//
// Exit codes: 0 success, 1 input error, 2 solver failure, 3 acceptance failure.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mushybench/mushybench.hpp"

namespace fs = std::filesystem;
using namespace mushybench;

namespace {

enum ExitCode : int { kOk = 0, kInputError = 1, kSolverError = 2, kAcceptanceFailed = 3 };

struct CliConfig {
  std::string material_path;
  std::string out_dir;
  std::optional<double> t_end, tau, length, t_out, t_init;
  std::optional<int> nodes;
  std::vector<double> samples;
  std::optional<double> tolerance, front_tolerance, temp_tolerance;
  int levels = 2;
};

void add_common_options(CLI::App* cmd, CliConfig& cfg) {
  cmd->add_option("--material", cfg.material_path, "Material JSON file")->required();
  cmd->add_option("--out", cfg.out_dir, "Output directory (falls back to $MUSHYBENCH_OUT)");
  cmd->add_option("--t-end", cfg.t_end, "Simulated time, s");
  cmd->add_option("--tau", cfg.tau, "Time step, s");
  cmd->add_option("--nodes", cfg.nodes, "Grid intervals N (nodes 0..N)");
  cmd->add_option("--length", cfg.length, "Domain length, m");
  cmd->add_option("--t-out", cfg.t_out, "Wall temperature, C");
  cmd->add_option("--t-init", cfg.t_init, "Initial melt temperature, C");
  cmd->add_option("--samples", cfg.samples, "Profile sample times, s")->delimiter(',');
  cmd->add_option("--tolerance", cfg.tolerance, "Acceptance bound for both error metrics, %");
  cmd->add_option("--front-tolerance", cfg.front_tolerance, "Acceptance bound for eps_x, %");
  cmd->add_option("--temp-tolerance", cfg.temp_tolerance, "Acceptance bound for eps_T, %");
  cmd->add_option("--levels", cfg.levels, "Convergence-study levels (compare only)");
}

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Scenario build_scenario(const CliConfig& cfg, bool require_positive_samples) {
  if (!fs::exists(cfg.material_path)) throw InputError("material file not found: " + cfg.material_path);
  Scenario s = default_scenario(load_material(cfg.material_path));
  if (cfg.t_end) s.grid.t_end = *cfg.t_end;
  if (cfg.tau) s.grid.tau = *cfg.tau;
  if (cfg.nodes) s.grid.nodes = *cfg.nodes;
  if (cfg.length) s.grid.length = *cfg.length;
  if (cfg.t_out) s.t_out = *cfg.t_out;
  if (cfg.t_init) s.t_init = *cfg.t_init;
  if (!cfg.samples.empty()) {
    s.grid.sample_times = cfg.samples;
  } else {
    std::erase_if(s.grid.sample_times, [&](double t) { return t > s.grid.t_end; });
  }
  if (cfg.tolerance) s.tolerances.front_error_pct = s.tolerances.temperature_error_pct = *cfg.tolerance;
  if (cfg.front_tolerance) s.tolerances.front_error_pct = *cfg.front_tolerance;
  if (cfg.temp_tolerance) s.tolerances.temperature_error_pct = *cfg.temp_tolerance;
  s.tolerances.window_end = std::min(s.tolerances.window_end, s.grid.t_end);

  validate(s.grid);
  if (!(s.t_out < s.material.t_solidus)) throw InputError("T_out must be below T_s");
  if (!(s.t_init > s.material.t_liquidus)) throw InputError("T_init must be above T_l");
  if (!(s.t_out >= 0.0)) throw InputError("T_out must be >= 0 C");
  if (require_positive_samples) {
    for (const double t : s.grid.sample_times) {
      if (!(t > 0.0)) throw InputError("exact profiles need sample times > 0");
    }
  }
  if (!(s.tolerances.front_error_pct >= 0.0 && s.tolerances.temperature_error_pct >= 0.0)) {
    throw InputError("tolerances must be >= 0");
  }
  if (cfg.levels < 1) throw InputError("--levels must be >= 1");

  if (!cfg.out_dir.empty()) {
    s.output_dir = cfg.out_dir;
  } else if (const char* env = std::getenv("MUSHYBENCH_OUT"); env && *env) {
    s.output_dir = env;
  } else {
    s.output_dir = "mushybench_out";
  }
  return s;
}

std::vector<double> node_positions(const GridSpec& g) {
  std::vector<double> xs(static_cast<std::size_t>(g.nodes) + 1);
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = g.spacing() * static_cast<double>(i);
  return xs;
}

void print_linearization(const LinearizationResult& r, bool eutectic) {
  std::printf("alpha_s  = %.6g m^2/s\nalpha_sl = %.6g m^2/s\nalpha_l  = %.6g m^2/s\n", r.alpha_s,
              r.alpha_sl, r.alpha_l);
  std::printf("residual = %.3g\n", r.residual);
  if (eutectic) std::printf("note: lambda0 > 0, eutectic mode is experimental\n");
}

void print_roots(const ExactSolution& sol) {
  const auto& k = sol.roots();
  const auto& h = sol.enthalpies();
  std::printf("H_out = %.6g  H_s = %.6g  H_l = %.6g  H_init = %.6g J/m^3\n", h.outer, h.solidus,
              h.liquidus, h.initial);
  std::printf("k_s = %.6g  k_l = %.6g m/s^0.5\n", k.k_s, k.k_l);
}

void write_exact_profiles(const fs::path& dir, const Scenario& s, const ExactSolution& sol) {
  const auto xs = node_positions(s.grid);
  for (const double t : s.grid.sample_times) {
    if (!(t > 0.0)) continue;
    write_exact_profile_csv(dir / ("exact_profile_t" + time_label(t) + ".csv"),
                            exact_profile(sol, xs, t));
  }
}

int cmd_linearize(const Scenario& s) {
  const fs::path& dir = s.output_dir;
  LinearizationResult r;
  try {
    r = solve_mushy_diffusivity(s.material);
  } catch (const RootNotFound& e) {
    fs::create_directories(dir);
    CsvWriter csv(dir / "alpha_scan.csv", {"alpha_candidate", "lambda_at_Ts"});
    std::cerr << e.what() << "\nalpha_candidate,lambda_at_Ts\n";
    for (const auto& [alpha, lambda] : e.table) {
      csv.row(alpha, lambda);
      std::cerr << format_number(alpha) << ',' << format_number(lambda) << '\n';
    }
    return kSolverError;
  }
  fs::create_directories(dir);
  write_scan_csv(dir / "alpha_scan.csv", r.scan);
  write_json(dir / "linearization.json", linearization_json(s.material, r));
  print_linearization(r, is_eutectic(s.material));
  return kOk;
}

int cmd_exact(const Scenario& s) {
  const auto lin = solve_mushy_diffusivity(s.material);
  const ExactSolution sol(s.material, lin, s.t_out, s.t_init);
  fs::create_directories(s.output_dir);
  write_json(s.output_dir / "exact.json", exact_json(sol));
  write_exact_profiles(s.output_dir, s, sol);
  print_linearization(lin, is_eutectic(s.material));
  print_roots(sol);
  return kOk;
}

int cmd_fdm(const Scenario& s) {
  const auto lin = solve_mushy_diffusivity(s.material);
  const auto result = run(s.material, lin.model, s.grid, s.t_out, s.t_init);
  fs::create_directories(s.output_dir);
  write_front_trace_csv(s.output_dir / "front_trace.csv", result.trace);
  for (const auto& p : result.profiles) {
    write_profile_csv(s.output_dir / profile_file_name(p.requested_time), p.temperature,
                      s.grid.spacing());
  }
  const auto& last = result.trace.back();
  std::printf("t = %.6g s  X_s = %s  X_l = %s\n", last.t,
              last.found_solidus ? format_number(last.x_solidus).c_str() : "n/a",
              last.found_liquidus ? format_number(last.x_liquidus).c_str() : "n/a");
  return kOk;
}

int cmd_compare(const Scenario& s, int levels) {
  const auto report = run_benchmark(s, levels);
  write_report(s.output_dir, s, report);
  write_exact_profiles(s.output_dir, s, *report.exact);
  print_linearization(report.linearization, is_eutectic(s.material));
  print_roots(*report.exact);
  std::printf("max |eps_x| on [%g, %g] s = %.6g %% (bound %g %%)\n", s.tolerances.window_start,
              s.tolerances.window_end, report.verdict.front_error_max, s.tolerances.front_error_pct);
  for (const auto& e : report.temperature_errors) {
    std::printf("max |eps_T| at t = %g s = %.6g %% (bound %g %%)\n", e.t, e.max_abs,
                s.tolerances.temperature_error_pct);
  }
  for (const auto& r : report.convergence) {
    std::printf("level %d: h = %.6g m, tau = %.6g s, max |eps_x|(t_end) = %.6g %%\n", r.level, r.h,
                r.tau, r.front_error_pct);
  }
  if (!report.verdict.passed()) {
    std::fprintf(stderr, "acceptance failed\n");
    return kAcceptanceFailed;
  }
  std::printf("acceptance passed\n");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mushy-zone solidification benchmark: exact solution vs. finite differences"};
  app.require_subcommand(1);
  CliConfig cfg;
  auto* linearize = app.add_subcommand("linearize", "Solve for the constant mushy diffusivity");
  auto* exact = app.add_subcommand("exact", "Solve the front coefficients and sample exact fields");
  auto* fdm = app.add_subcommand("fdm", "Run the finite-difference solver");
  auto* compare = app.add_subcommand("compare", "Full benchmark with error report");
  for (auto* cmd : {linearize, exact, fdm, compare}) add_common_options(cmd, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Error& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  Scenario scenario;
  try {
    scenario = build_scenario(cfg, exact->parsed() || compare->parsed());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (linearize->parsed()) return cmd_linearize(scenario);
    if (exact->parsed()) return cmd_exact(scenario);
    if (fdm->parsed()) return cmd_fdm(scenario);
    return cmd_compare(scenario, cfg.levels);
  } catch (const ConfigurationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const Error& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kSolverError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSolverError;
  }
}
