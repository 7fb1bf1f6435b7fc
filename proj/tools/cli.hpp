// cli.hpp: command-line entry point, callable in-process
#pragma once

#include "run_config.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace jcqed::cli {

// args excludes the program name. Returns the process exit status: 0 on
// success, 1 for usage errors, 2 for errors raised by the library. Failures
// print one JSON object {"error", "message"} on err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Flags merged over an optional --config file.
RunConfig parse_args(const std::vector<std::string>& args, bool& dump_config);

// Executes a fully resolved configuration.
void execute(const RunConfig& cfg, std::ostream& out, std::ostream& err);

} // namespace jcqed::cli
