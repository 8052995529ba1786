#pragma once

#include <iosfwd>
#include <vector>

#include "json.hpp"

#include "liouville/lab/run_config.hpp"
#include "liouville/lab/table.hpp"

namespace liouville::lab {

struct ExperimentResult {
  std::vector<Table> tables;
  nlohmann::json summary = nlohmann::json::object();
};

/// Runs the experiment without touching the filesystem.
ExperimentResult run_experiment(const RunConfig& config);

enum ExitCode : int { kExitOk = 0, kExitConfig = 1, kExitNumerical = 2 };

/// Runs, writes data files and manifest.json into config.out_dir (created if
/// absent) and maps failures to exit codes. Diagnostics go to `log`.
int run(const RunConfig& config, std::ostream& log);

}  // namespace liouville::lab
