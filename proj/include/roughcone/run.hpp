#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "roughcone/config.hpp"

namespace roughcone {

/// Exit statuses: all checks pass/hold, something refuted/failed, only
/// inconclusive outcomes, and the error codes used by the CLI.
enum ExitStatus : int {
  kExitPass = 0,
  kExitFail = 1,
  kExitInconclusive = 2,
  kExitConfigError = 3,
  kExitIoError = 4,
  kExitInternalError = 5,
};

struct RunResult {
  int exit_status = kExitPass;
  Json report;                        // includes wall_clock_seconds
  std::vector<std::string> summary;  // human-readable lines
};

/// Dispatches the configured command. Library errors propagate as
/// ConfigError with the config path they relate to.
RunResult run(const RunConfig& config);

/// The report without its wall-clock field (what determinism compares).
Json without_wall_clock(const Json& report);

/// CSV trace of an analyze or limset run: a header line, then one row per
/// index (or index pair i < j, or grid candidate) in index order. Floating
/// values use 17 significant digits. ConfigError for other commands.
void emit_trace(const RunConfig& config, std::ostream& out);

/// Writes a header line followed by the given rows.
void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

/// %.17g rendering used by traces.
std::string format_double(double v);

}  // namespace roughcone
