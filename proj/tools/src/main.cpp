// pucci-lab <command> [--config path.json] [--set key=value ...] [--out dir]
//
// Exit status: 0 when every check passes, 1 when some check fails, 2 on
// invalid input or a solver error.

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pucci/error.hpp"
#include "pucci_lab/commands.hpp"

int main(int argc, char** argv) {
  using namespace pucci::lab;
  CLI::App app{"Pucci operator numerical laboratory"};
  app.set_version_flag("--version", version());
  app.require_subcommand(1);

  std::string config_file;
  std::vector<std::string> overrides;
  std::string out_dir = "out";
  for (const auto& name : command_names()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_file, "JSON parameter file")->check(CLI::ExistingFile);
    sub->add_option("--set", overrides, "override, key=value (value parsed as JSON)")->take_all();
    sub->add_option("--out", out_dir, "output directory")->capture_default_str();
  }
  CLI11_PARSE(app, argc, argv);

  try {
    const std::string command = app.get_subcommands().front()->get_name();
    std::optional<std::filesystem::path> file;
    if (!config_file.empty()) file = config_file;
    ExperimentConfig cfg = ExperimentConfig::load(command, file, overrides, out_dir);
    const RunReport rep = run_command(cfg);
    const auto path = write_report(rep, cfg.output_dir);
    for (const auto& c : rep.checks) {
      std::printf("%s  %-44s value=%-12.6g threshold=%.6g\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.value,
                  c.threshold);
    }
    std::printf("%s: %s in %.2f s -> %s\n", rep.command.c_str(), rep.all_pass() ? "all checks pass" : "FAILED",
                rep.wall_time, path.string().c_str());
    return rep.all_pass() ? 0 : 1;
  } catch (const pucci::Error& e) {
    std::fprintf(stderr, "pucci-lab: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "pucci-lab: %s\n", e.what());
    return 2;
  }
}
