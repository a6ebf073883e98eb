#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "enaqt/config.hpp"

namespace enaqt {

enum ExitCode : int { kExitOk = 0, kExitError = 1, kExitConfig = 2, kExitSolverFailures = 3 };

// Runs each sweep and writes its outputs under out_dir. Returns
// kExitSolverFailures if any grid point exceeded the failure threshold.
int run_sweeps(const std::vector<SweepConfig>& sweeps, int jobs, const std::filesystem::path& out_dir,
               std::ostream& log);

void print_presets(std::ostream& os);

// Entry point of the enaqt executable.
int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace enaqt
