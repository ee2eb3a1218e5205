#include <algorithm>

#include "common.hpp"
#include "pucci_lab/commands.hpp"

namespace pucci::lab {

RunReport cmd_report(ExperimentConfig& cfg) {
  const std::filesystem::path dir = cfg.text("dir", cfg.output_dir.string());
  cfg.reject_unknown();
  if (!std::filesystem::is_directory(dir)) throw Error(ErrorCode::InvalidParameters, "no such directory " + dir.string());

  const std::string suffix = ".report.json";
  std::vector<std::filesystem::path> inputs;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (name.ends_with(suffix) && name != "report" + suffix) inputs.push_back(entry.path());
  }
  std::sort(inputs.begin(), inputs.end());

  RunReport rep;
  rep.command = "report";
  rep.parameters = cfg.effective();
  rep.results["table"] = nlohmann::json::array();
  for (const auto& file : inputs) {
    const RunReport r = read_report(file);
    nlohmann::json failing = nlohmann::json::array();
    for (const auto& c : r.checks) {
      if (!c.pass) failing.push_back(c.name);
    }
    const auto failed = failing.size();
    rep.results["table"].push_back({{"command", r.command},
                                    {"file", file.filename().string()},
                                    {"checks", r.checks.size()},
                                    {"failed", failed},
                                    {"failing", failing},
                                    {"wall_time", r.wall_time},
                                    {"version", r.version}});
    rep.add(r.command, failed == 0, static_cast<double>(failed), 0.0);
  }
  return rep;
}

}  // namespace pucci::lab
