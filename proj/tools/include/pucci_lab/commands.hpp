#pragma once

// pucci-lab commands. Each reads its parameters from the config, validates
// them before any compute, and returns a report whose checks decide the exit
// status. Field and table outputs are written as CSV into config.output_dir.

#include <string>
#include <vector>

#include "pucci_lab/config.hpp"
#include "pucci_lab/report.hpp"

namespace pucci::lab {

RunReport cmd_radial(ExperimentConfig& cfg);
RunReport cmd_overdetermined(ExperimentConfig& cfg);
RunReport cmd_eigen(ExperimentConfig& cfg);
RunReport cmd_serrin(ExperimentConfig& cfg);
RunReport cmd_sector(ExperimentConfig& cfg);
RunReport cmd_properties(ExperimentConfig& cfg);
/// Aggregates the `*.report.json` files found in the "dir" parameter
/// (default output_dir) into one summary table.
RunReport cmd_report(ExperimentConfig& cfg);

const std::vector<std::string>& command_names();

/// Dispatches on cfg.command and fills in wall time and version. Throws
/// InvalidParameters for an unknown command.
RunReport run_command(ExperimentConfig& cfg);

}  // namespace pucci::lab
