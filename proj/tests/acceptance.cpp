// Acceptance run: one PASS/FAIL line per criterion, each with its tolerance
// and runtime budget. `acceptance --only k` runs criterion k alone.
//
// Exit status is 0 when every selected criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pucci/error.hpp"
#include "pucci_lab/checks.hpp"
#include "pucci_lab/commands.hpp"

using namespace pucci;
using namespace pucci::lab;
using nlohmann::json;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget;  // seconds
  std::function<Outcome()> run;
};

RunReport run(const std::string& command, json params) {
  ExperimentConfig cfg(command, std::move(params));
  cfg.output_dir = std::filesystem::temp_directory_path() / "pucci_acceptance";
  return run_command(cfg);
}

const Check* find(const RunReport& rep, const std::string& name) {
  for (const auto& c : rep.checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

// max value over checks whose name starts with prefix; all of them must pass
// and there must be `expected` of them (at least one when expected < 0)
std::pair<bool, double> worst(const RunReport& rep, const std::string& prefix, int expected) {
  bool pass = true;
  double value = 0.0;
  int seen = 0;
  for (const auto& c : rep.checks) {
    if (c.name.rfind(prefix, 0) != 0) continue;
    ++seen;
    pass = pass && c.pass;
    value = std::max(value, c.value);
  }
  return {pass && (expected < 0 ? seen > 0 : seen == expected), value};
}

std::string fmt(const char* pattern, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

Outcome closed_form() {
  const auto rep = run("radial", {{"a", 1.0}, {"A", 1.0}, {"R", 1.0}, {"sweep_alpha", {-0.5, 0.0, 1.0}},
                                  {"sweep_N", {2, 3}}, {"tolerance", 1e-5}});
  const auto [pass, err] = worst(rep, "closed_form[", 6);
  return {pass, fmt("sup error %.3g over 6 (alpha, N) pairs, tol 1e-5", err)};
}

Outcome overdetermined() {
  const auto rep = run("overdetermined", {{"a", 1.0}, {"A", 1.0}, {"sweep_alpha", {-0.5, 0.0, 1.0}},
                                          {"sweep_N", {2, 3}}, {"tolerance", 1e-5}, {"laplacian_tolerance", 1e-10}});
  const auto [rt_pass, rt] = worst(rep, "shoot_roundtrip[", 6);
  const auto [lap_pass, lap] = worst(rep, "laplacian", -1);
  return {rt_pass && lap_pass && rep.all_pass(),
          fmt("round trip %.3g (tol 1e-5), Laplacian c + R/N %.3g (tol 1e-10)", rt, lap)};
}

Outcome quarter_sphere() {
  std::string detail;
  bool pass = true;
  for (int N : {2, 3}) {
    const auto rep = run("sector", {{"N", N}, {"ratios", {1.0}}, {"gamma_triples", json::array()},
                                    {"spacing", std::numbers::pi / 400.0}, {"lambda_tolerance", N == 2 ? 0.01 : 0.02}});
    const Check* c = find(rep, "quarter_sphere_2NA[a/A=1]");
    pass = pass && c && c->pass;
    const double lam = rep.results.at("records").at(0).at("lambda_bar").get<double>();
    detail += fmt("%sN=%d lambda0 %.5f vs %d (rel %.2g, tol %.0f%%)", N == 2 ? "" : "; ", N, lam, 2 * N,
                  c ? c->value : NAN, N == 2 ? 1.0 : 2.0);
  }
  return {pass, detail};
}

Outcome gamma_limit() {
  const auto rep = run("sector", {{"N", 2}, {"ratios", json::array()},
                                  {"gamma_triples", {{0.9, 0.1, 0.2}, {0.95, 0.01, 0.1}, {0.99, 1e-3, 0.02}}},
                                  {"spacing", std::numbers::pi / 400.0}, {"gamma_tolerance", 0.02}});
  std::string gammas;
  for (const auto& r : rep.results.at("records")) gammas += fmt("%s%.4f", gammas.empty() ? "" : ", ", r.at("gamma").get<double>());
  const Check* lim = find(rep, "gamma_limit");
  const Check* mono = find(rep, "gamma_distance_decreasing");
  const Check* above = find(rep, "gamma_above_2[0]");
  const bool pass = lim && mono && above && lim->pass && mono->pass && above->pass;
  return {pass, fmt("gamma = %s; |gamma-2| %.4f (tol 0.02), decreasing %s, gamma(0.9) > 2 %s", gammas.c_str(),
                    lim ? lim->value : NAN, mono && mono->pass ? "yes" : "no", above && above->pass ? "yes" : "no")};
}

Outcome disk_symmetry() {
  const auto rep = run("serrin", {{"a", 1.0}, {"A", 1.0}, {"h", 0.01}, {"ellipse", {2.0, 1.0}},
                                  {"trace_std_tolerance", 5e-3}, {"trace_spread_min", 0.2}});
  const Check* sd = find(rep, "disk_trace_std");
  const Check* gaps = find(rep, "disk_reflection_gaps");
  const Check* spread = find(rep, "ellipse_trace_spread");
  const Check* exact = find(rep, "ellipse_vs_exact");
  const bool pass = sd && gaps && spread && exact && sd->pass && gaps->pass && spread->pass && exact->pass;
  return {pass, fmt("trace std %.3g (tol 5e-3), max gap %.3g (tol 2h = 0.02), ellipse spread %.4f (min 0.2)",
                    sd ? sd->value : NAN, gaps ? gaps->value : NAN, spread ? spread->value : NAN)};
}

Outcome hessian_crosscheck() {
  const auto eq = boundary_hessian_crosscheck({1.0, 1.0, Variant::Plus, 0.0}, 1.0, 16);
  const auto neq = boundary_hessian_crosscheck({1.0, 1.5, Variant::Plus, 0.0}, 1.0, 16);
  const bool pass = eq.max_error <= 5e-3 && neq.pattern_confirmed && neq.max_error <= 2e-2;
  return {pass, fmt("a=A error %.3g (tol 5e-3); (1, 1.5) error %.3g (tol 2e-2), sign pattern %s", eq.max_error,
                    neq.max_error, neq.pattern_confirmed ? "confirmed" : "not confirmed")};
}

Outcome eigen_oracles() {
  const auto lap = run("eigen", {{"a", 1.0}, {"A", 1.0}, {"grid", true}, {"bessel_tolerance", 0.02}});
  const auto pucci_run = run("eigen", {{"a", 1.0}, {"A", 1.5}, {"grid", true}, {"radial_tolerance", 0.03}});
  const Check* bessel = find(lap, "grid_vs_bessel");
  const Check* ball = find(pucci_run, "grid_vs_ball");
  const bool pass = bessel && ball && bessel->pass && ball->pass && find(lap, "grid_positive")->pass &&
                    find(pucci_run, "grid_positive")->pass;
  return {pass, fmt("disk vs j0^2 = %.4f: rel %.3g (tol 2%%); (1, 1.5) grid vs shooting rel %.3g (tol 3%%)",
                    std::pow(bessel_j0_first_zero(), 2), bessel ? bessel->value : NAN, ball ? ball->value : NAN)};
}

Outcome properties() {
  const auto rep = run("properties", {{"trials", 200}, {"L", 10.0}});
  int failures = 0;
  for (const auto& c : rep.checks) failures += c.pass ? 0 : 1;
  return {rep.all_pass(), fmt("%zu suites x 200 trials, %d failing suites", rep.checks.size(), failures)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  app.add_option("--only", only, "run a single criterion (1-8)")->check(CLI::Range(1, 8));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria = {
      {1, "closed-form reproduction", 1.0, closed_form},
      {2, "overdetermined relation", 1.0, overdetermined},
      {3, "quarter-sphere eigenvalue", 60.0, quarter_sphere},
      {4, "exponent limit", 120.0, gamma_limit},
      {5, "disk symmetry diagnostics", 60.0, disk_symmetry},
      {6, "boundary Hessian", 5.0, hessian_crosscheck},
      {7, "eigenvalue oracles", 60.0, eigen_oracles},
      {8, "property suites", 120.0, properties},
  };

  bool all = true;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.budget;
    const bool pass = out.pass && in_time;
    all = all && pass;
    std::printf("%s  #%d %-28s %s | %.2f s (budget %.0f s%s)\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                out.detail.c_str(), secs, c.budget, in_time ? "" : ", exceeded");
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
