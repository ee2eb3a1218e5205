#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>

#include "pucci/error.hpp"
#include "pucci_lab/commands.hpp"
#include "pucci_lab/config.hpp"
#include "pucci_lab/report.hpp"

using namespace pucci;
using namespace pucci::lab;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("pucci_lab_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& file) {
  std::ifstream in(file);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunReport run(const std::string& command, const std::vector<std::string>& overrides, const fs::path& out) {
  auto cfg = ExperimentConfig::load(command, std::nullopt, overrides, out);
  return run_command(cfg);
}

std::string without_wall_time(RunReport rep) {
  rep.wall_time = 0.0;
  return rep.dump();
}

int exit_code(const std::string& args) {
  const int status = std::system((std::string(PUCCI_LAB_BIN) + " " + args + " > /dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const std::vector<std::string> kFastProperties = {"trials=4", "comparison_trials=1", "small_domain_trials=1"};

}  // namespace

TEST_CASE("config files and overrides") {
  const auto dir = scratch("config");
  {
    std::ofstream f(dir / "cfg.json");
    f << R"({"a": 0.5, "A": 2, "ratios": [1, 0.9], "seed": 7})";
  }
  auto cfg = ExperimentConfig::load("sector", dir / "cfg.json", {"A=3", "variant=minus", "note=hello"}, dir);
  CHECK(cfg.seed == 7);
  CHECK(cfg.number("a", 1.0) == 0.5);
  CHECK(cfg.number("A", 1.0) == 3.0);
  CHECK(cfg.variant() == Variant::Minus);
  CHECK(cfg.numbers("ratios", {}) == std::vector<double>{1.0, 0.9});
  CHECK(cfg.integer("N", 2) == 2);
  CHECK(cfg.text("note", "") == "hello");
  cfg.reject_unknown();
  const auto eff = cfg.effective();
  CHECK(eff.at("N") == 2);
  CHECK(eff.at("seed") == 7);

  ExperimentConfig extra("radial", {{"a", 1.0}, {"typo", 3}});
  extra.number("a", 1.0);
  CHECK_THROWS_AS(extra.reject_unknown(), Error);
  CHECK_THROWS_AS(extra.apply_override("no_equals_sign"), Error);
  ExperimentConfig bad("radial", {{"N", 2.5}});
  CHECK_THROWS_AS(bad.integer("N", 2), Error);
  CHECK_THROWS_AS(ExperimentConfig::load("radial", dir / "missing.json", {}, dir), Error);
}

TEST_CASE("report json round trip") {
  RunReport rep;
  rep.command = "demo";
  rep.parameters = {{"a", 1.0}};
  rep.results = {{"value", 3.5}};
  rep.add("finite", true, 1e-3, 1e-2);
  rep.add("infinite", false, std::numeric_limits<double>::infinity(), 0.0);
  rep.add_at_most("nan", std::numeric_limits<double>::quiet_NaN(), 1.0);
  rep.wall_time = 0.25;
  rep.version = version();
  CHECK_FALSE(rep.all_pass());
  const auto back = RunReport::from_json(nlohmann::json::parse(rep.dump()));
  CHECK(back == rep);
  CHECK(std::isinf(back.checks[1].value));
  CHECK(std::isnan(back.checks[2].value));
  CHECK_FALSE(back.checks[2].pass);
  const auto dir = scratch("report");
  CHECK(read_report(write_report(rep, dir)) == rep);
  CHECK_THROWS_AS(RunReport::from_json(nlohmann::json{{"command", "x"}}), Error);
}

TEST_CASE("reruns are identical apart from wall time") {
  const auto d1 = scratch("rerun1");
  const auto d2 = scratch("rerun2");
  const std::vector<std::string> args = {"sweep=false", "h=1e-3"};
  const auto r1 = run("radial", args, d1);
  const auto r2 = run("radial", args, d2);
  CHECK(r1.all_pass());
  CHECK(without_wall_time(r1) == without_wall_time(r2));
  CHECK(slurp(d1 / "radial_profile.csv") == slurp(d2 / "radial_profile.csv"));
  const auto p1 = run("properties", kFastProperties, d1);
  const auto p2 = run("properties", kFastProperties, d2);
  CHECK(without_wall_time(p1) == without_wall_time(p2));
}

TEST_CASE("seed changes sample points, not verdicts") {
  const auto dir = scratch("seed");
  auto with_seed = kFastProperties;
  with_seed.push_back("seed=99");
  const auto a = run("properties", kFastProperties, dir);
  const auto b = run("properties", with_seed, dir);
  REQUIRE(a.checks.size() == b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    CHECK(a.checks[i].name == b.checks[i].name);
    CHECK(a.checks[i].pass == b.checks[i].pass);
  }
  CHECK(a.parameters.at("seed") != b.parameters.at("seed"));
}

TEST_CASE("negative control is detected") {
  auto args = kFastProperties;
  args.push_back("inject_nonmonotone=true");
  const auto rep = run("properties", args, scratch("control"));
  bool flagged = false;
  for (const auto& c : rep.checks) {
    if (c.name.rfind("scheme_monotone", 0) == 0) flagged = !c.pass;
  }
  CHECK(flagged);
  CHECK_FALSE(rep.all_pass());
}

TEST_CASE("invalid input is rejected before compute") {
  const auto dir = scratch("invalid");
  try {
    run("sector", {"N=4"}, dir);
    FAIL("expected Unsupported");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Unsupported);
  }
  CHECK_THROWS_AS(run("overdetermined", {"c=0.5"}, dir), Error);
  CHECK_THROWS_AS(run("radial", {"a=-1"}, dir), Error);
  CHECK_THROWS_AS(run("radial", {"unknown_key=1"}, dir), Error);
  CHECK_THROWS_AS(run("nonsense", {}, dir), Error);
}

TEST_CASE("report aggregates command reports") {
  const auto dir = scratch("aggregate");
  write_report(run("radial", {"sweep=false", "h=1e-3"}, dir), dir);
  write_report(run("overdetermined", {"sweep=false", "h=1e-3"}, dir), dir);
  const auto rep = run("report", {}, dir);
  CHECK(rep.checks.size() == 2);
  CHECK(rep.all_pass());
}

TEST_CASE("exit status of the binary") {
  const auto dir = scratch("exit").string();
  CHECK(exit_code("radial --set sweep=false h=1e-3 --out " + dir) == 0);
  CHECK(exit_code("properties --set trials=4 comparison_trials=1 small_domain_trials=1 inject_nonmonotone=true --out " +
                  dir) == 1);
  CHECK(exit_code("sector --set N=4 --out " + dir) == 2);
  CHECK(exit_code("radial --set a=0 --out " + dir) == 2);
  CHECK(fs::exists(fs::path(dir) / "radial.report.json"));
}
