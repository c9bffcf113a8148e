#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "config.hpp"

namespace corrlife::cli {

/// Process exit codes.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitData = 2,
    kExitInternal = 3,
};

// Each command writes its files under config.out and a short summary to `log`.
void cmd_corr(const RunConfig& config, std::ostream& log);
void cmd_lifetime(const RunConfig& config, std::ostream& log);
void cmd_mst(const RunConfig& config, std::ostream& log);
void cmd_epps(const RunConfig& config, std::ostream& log);
void cmd_synth(const RunConfig& config, std::ostream& log);

/// Parses `args` (without the program name), runs the selected command and
/// maps failures onto ExitCode. Diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace corrlife::cli
