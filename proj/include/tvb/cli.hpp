// The tvb command line, callable in-process.
#pragma once

#include "tvb/io.hpp"
#include "tvb/report.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace tvb {

enum ExitCode { kExitOk = 0, kExitInvalid = 1, kExitParse = 2 };

/// Fan, pp-divisor, support-map, transition and toric-input checks.
Report validate_project(const ProjectFile& file);

/// args excludes the program name. Reports go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tvb
