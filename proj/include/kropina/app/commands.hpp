#pragma once

// Subcommand bodies. Each writes its report to `out` and returns the exit
// code: 0 when every check passes, 1 when a check fails. Configuration
// problems surface as ConfigError (exit code 2 in the CLI).

#include <ostream>
#include <string>

#include "kropina/app/config.hpp"

namespace kropina::app {

enum class Format { kCsv, kJson };

// Resolves "auto" to the command's default format.
Format resolve_format(const RunConfig& cfg, Format fallback);

int run_verify(const RunConfig& cfg, std::ostream& out);
int run_curvature_table(const RunConfig& cfg, std::ostream& out);
int run_geodesic(const RunConfig& cfg, std::ostream& out);
int run_volume(const RunConfig& cfg, std::ostream& out);
int run_minimality(const RunConfig& cfg, std::ostream& out);

// Dispatch by name ("verify", "curvature-table", ...). Throws ConfigError for unknown names.
int run_command(const std::string& name, const RunConfig& cfg, std::ostream& out);

}  // namespace kropina::app
