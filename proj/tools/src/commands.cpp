#include "pucci_lab/commands.hpp"

#include <chrono>
#include <map>

#include "pucci/error.hpp"

namespace pucci::lab {

namespace {

using Command = RunReport (*)(ExperimentConfig&);

const std::map<std::string, Command>& table() {
  static const std::map<std::string, Command> t{
      {"radial", cmd_radial}, {"overdetermined", cmd_overdetermined}, {"eigen", cmd_eigen},
      {"serrin", cmd_serrin}, {"sector", cmd_sector},                 {"properties", cmd_properties},
      {"report", cmd_report},
  };
  return t;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"radial", "overdetermined", "eigen", "serrin",
                                              "sector", "properties",     "report"};
  return names;
}

RunReport run_command(ExperimentConfig& cfg) {
  const auto it = table().find(cfg.command);
  if (it == table().end()) throw Error(ErrorCode::InvalidParameters, "unknown command " + cfg.command);
  const auto start = std::chrono::steady_clock::now();
  RunReport rep = it->second(cfg);
  rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  rep.version = version();
  return rep;
}

}  // namespace pucci::lab
