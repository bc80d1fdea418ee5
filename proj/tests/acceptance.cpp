// Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero when any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <json.hpp>

#include "mushybench/mushybench.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace mushybench;
using json = nlohmann::json;

namespace {

const fs::path kMaterial = fs::path(MUSHYBENCH_DATA) / "vt3-1.json";

struct Timed {
  int code = -1;
  double seconds = 0.0;
};

Timed cli(const std::string& args) {
  const std::string cmd =
      "\"" + std::string(MUSHYBENCH_CLI) + "\" " + args + " > /dev/null 2>&1";
  const auto t0 = std::chrono::steady_clock::now();
  const int status = std::system(cmd.c_str());
  const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, dt.count()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const fs::path& p) { return json::parse(slurp(p)); }

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

bool same_6_digits(double value, double reference) {
  char a[32];
  char b[32];
  std::snprintf(a, sizeof a, "%.5e", value);
  std::snprintf(b, sizeof b, "%.5e", reference);
  return std::string(a) == b;
}

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("criterion %2d: %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

void guarded(int id, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(id, false, std::string("exception: ") + e.what());
  }
}

}  // namespace

int main() {
  const fs::path work = fs::temp_directory_path() / "mushybench_acceptance";
  fs::remove_all(work);
  fs::create_directories(work);
  const std::string mat = "--material \"" + kMaterial.string() + "\"";
  const auto out = [&](const char* name) { return " --out \"" + (work / name).string() + "\""; };

  guarded(1, [&] {
    const auto r = cli("linearize " + mat + out("lin"));
    const double alpha = read_json(work / "lin" / "linearization.json")["alpha_sl"];
    const double err = rel(alpha, 2.26891e-7);
    report(1, r.code == 0 && err <= 5e-4 && r.seconds < 1.0,
           fmt("alpha_sl = %.9g (rel err %.2e, bound 5e-4), %.3f s (bound 1 s)", alpha, err,
               r.seconds));
  });

  json exact;
  guarded(2, [&] {
    const auto r = cli("exact " + mat + out("exact"));
    exact = read_json(work / "exact" / "exact.json");
    const double ks = exact["k_s"];
    const double kl = exact["k_l"];
    const double rs = exact["residual_s_relative"];
    const double rl = exact["residual_l_relative"];
    const double es = rel(ks, 0.00134109);
    const double el = rel(kl, 0.00206009);
    report(2, r.code == 0 && es <= 1e-3 && el <= 1e-3 && rs <= 1e-9 && rl <= 1e-9 && r.seconds < 1.0,
           fmt("k_s = %.9g (%.1e), k_l = %.9g (%.1e), residuals %.1e / %.1e, %.3f s", ks, es, kl,
               el, rs, rl, r.seconds));
  });

  guarded(3, [&] {
    if (exact.is_null()) throw std::runtime_error("exact.json unavailable");
    struct Golden {
      const char* key;
      double value;
    };
    const Golden golden[] = {
        {"H_out", 2.16e9}, {"H_init", 10.5057e9}, {"H_s", 4.185e9}, {"H_l", 10.3455e9}};
    bool ok = true;
    std::string detail;
    for (const auto& g : golden) {
      const double v = exact[g.key];
      const bool match = same_6_digits(v, g.value);
      ok = ok && match;
      detail += fmt("%s = %.6g (ref %.6g)%s  ", g.key, v, g.value, match ? "" : " MISMATCH");
    }
    report(3, ok, detail);
  });

  guarded(4, [&] {
    const auto worst_gap = [](const MaterialProperties& m, const LinearizationResult& lin) {
      const auto table = integrate_fraction_ode(m, lin.alpha_sl, 999);
      double worst = 0.0;
      for (const auto& s : table) {
        worst = std::max(worst, std::abs(s.fraction - lin.model.evaluate(s.temperature)));
      }
      return worst;
    };
    double worst = worst_gap(vt3_1(), solve_mushy_diffusivity(vt3_1()));
    std::mt19937_64 rng(4);
    int sets = 0;
    while (sets < 50) {
      const auto alloy = testing::random_alloy(rng);
      LinearizationResult lin;
      try {
        lin = solve_mushy_diffusivity(alloy.material);
      } catch (const Error&) {
        continue;
      }
      worst = std::max(worst, worst_gap(alloy.material, lin));
      ++sets;
    }
    report(4, worst <= 1e-8,
           fmt("max |lambda_closed - lambda_rk4| = %.2e over 1000 temperatures x 51 sets "
               "(bound 1e-8)",
               worst));
  });

  const auto& sol = testing::vt3_solution();

  guarded(5, [&] {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const double t = 1.0 + 499.0 * u(rng);
      const double x = 2.5 * sol.roots().k_l * std::sqrt(t) * u(rng);
      const double c = 0.2 + 4.8 * u(rng);
      worst = std::max(worst, std::abs(enthalpy_field(sol, x, t) - enthalpy_field(sol, c * x, c * c * t)));
    }
    const double bound = 1e-9 * sol.enthalpies().initial;
    report(5, worst <= bound, fmt("max |H(x,t) - H(cx,c^2 t)| = %.3g J/m^3 (bound %.3g)", worst, bound));
  });

  guarded(6, [&] {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    // Steps scaled to the diffusion length of the sampled region.
    const double dt = 1e-3;
    double worst_x = 0.0;
    double worst_t = 0.0;
    int points = 0;
    for (const Region region : {Region::solid, Region::mush, Region::liquid}) {
      for (int i = 0; i < 30; ++i) {
        const double t = 20.0 + 480.0 * u(rng);
        const auto f = front_position(sol.roots(), t);
        const double s = 0.05 + 0.9 * u(rng);
        double x = 0.0;
        switch (region) {
          case Region::solid: x = s * f.solidus; break;
          case Region::mush: x = f.solidus + s * (f.liquidus - f.solidus); break;
          case Region::liquid: x = f.liquidus * (1.05 + 2.0 * s); break;
        }
        const auto& lin = sol.linearization();
        const double alpha = region == Region::solid  ? lin.alpha_s
                             : region == Region::mush ? lin.alpha_sl
                                                      : lin.alpha_l;
        const double dx = 1e-4 * std::sqrt(alpha * t);
        const double gx = temperature_gradient(sol, x, t);
        const double fx = (temperature_field(sol, x + dx, t) - temperature_field(sol, x - dx, t)) / (2 * dx);
        const double gt = cooling_rate(sol, x, t);
        const double ft = (temperature_field(sol, x, t + dt) - temperature_field(sol, x, t - dt)) / (2 * dt);
        worst_x = std::max(worst_x, rel(gx, fx));
        worst_t = std::max(worst_t, rel(gt, ft));
        ++points;
      }
    }
    report(6, worst_x <= 1e-5 && worst_t <= 1e-5,
           fmt("%d points: max rel err dT/dx %.2e, dT/dt %.2e (bound 1e-5)", points, worst_x, worst_t));
  });

  guarded(7, [&] {
    const double g1 = liquidus_gradient(sol, 1.0);
    const double c1 = liquidus_cooling_rate(sol, 1.0);
    double worst_g = 0.0;
    double worst_c = 0.0;
    for (const double t : {10.0, 100.0}) {
      worst_g = std::max(worst_g, rel(liquidus_gradient(sol, t) * std::sqrt(t), g1));
      worst_c = std::max(worst_c, rel(liquidus_cooling_rate(sol, t) * t, c1));
    }
    const auto arm = [&](double t) {
      return std::pow(liquidus_gradient(sol, t), -0.5) *
             std::pow(front_velocity(sol.roots(), t).liquidus, -0.25);
    };
    const double slope = std::log(arm(100.0) / arm(1.0)) / std::log(100.0);
    report(7, worst_g <= 1e-12 && worst_c <= 1e-12 && std::abs(slope - 0.375) <= 1e-6,
           fmt("G_l sqrt(t) drift %.1e, Tdot_l t drift %.1e (bound 1e-12), slope %.9f (3/8 +- 1e-6)",
               worst_g, worst_c, slope));
  });

  json summary;
  Timed compare_run;
  guarded(8, [&] {
    compare_run = cli("compare " + mat + out("compare_a"));
    summary = read_json(work / "compare_a" / "summary.json");
    const double front = summary["acceptance"]["front_error_max_pct"];
    double temp = 0.0;
    std::string temps;
    for (const auto& e : summary["temperature_errors"]) {
      temp = std::max(temp, e["max_abs_pct"].get<double>());
      temps += fmt("t=%g: %.3f%% ", e["t"].get<double>(), e["max_abs_pct"].get<double>());
    }
    const bool ok = compare_run.code == 0 && front <= 2.0 && temp <= 1.0 && compare_run.seconds <= 30.0;
    report(8, ok,
           fmt("max |eps_x| on [50, 500] s = %.3f%% (bound 2%%), max |eps_T| %s(bound 1%%), exit %d, %.2f s",
               front, temps.c_str(), compare_run.code, compare_run.seconds));
  });

  guarded(9, [&] {
    if (summary.is_null()) throw std::runtime_error("summary.json unavailable");
    const auto& conv = summary["convergence"];
    if (conv.size() < 2) throw std::runtime_error("need two convergence levels");
    const double e0 = conv[0]["max_eps_x_pct"];
    const double e1 = conv[1]["max_eps_x_pct"];
    const double ratio = e0 / e1;
    report(9, ratio >= 1.2 && compare_run.seconds <= 300.0,
           fmt("max |eps_x|(500 s): %.4f%% -> %.4f%%, ratio %.3f (bound 1.2), %.2f s", e0, e1, ratio,
               compare_run.seconds));
  });

  guarded(10, [&] {
    cli("compare " + mat + out("compare_b"));
    int compared = 0;
    std::vector<std::string> differing;
    for (const auto& entry : fs::directory_iterator(work / "compare_a")) {
      const fs::path other = work / "compare_b" / entry.path().filename();
      ++compared;
      if (!fs::exists(other) || slurp(entry.path()) != slurp(other)) {
        differing.push_back(entry.path().filename().string());
      }
    }
    std::string detail = fmt("%d files compared", compared);
    for (const auto& d : differing) detail += ", differs: " + d;
    report(10, compared > 0 && differing.empty(), detail);
  });

  fs::remove_all(work);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
