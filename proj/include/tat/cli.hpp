#pragma once

// Pipeline commands behind the `tat` executable. Each returns the process
// exit code and writes one log line per stage to `log`.

#include <iosfwd>
#include <string>

#include "tat/io.hpp"

namespace tat {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitValidation = 2, kExitIo = 3 };

/// phantom.tatg (truth on the reconstruction grid) and phantom.txt.
int cmd_phantom(const RunConfig& cfg, std::ostream& log);

/// One <Kind>.tatp file per requested kind.
int cmd_forward(const RunConfig& cfg, std::ostream& log);

/// recon.tatg, metrics.txt against the configured phantom, and slice.txt
/// (x, f_true, f_recon) along the x axis through the first component centre.
int cmd_recon(const RunConfig& cfg, const std::string& panel_file, std::ostream& log);

/// validate.txt; exits with kExitValidation when any report fails.
int cmd_validate(const RunConfig& cfg, std::ostream& log);

/// Compares two grid files (diff.txt, slice.txt, compare.txt) or two report
/// files (compare.txt with per-name numeric differences).
int cmd_compare(const std::string& a, const std::string& b, const std::string& out_dir, std::ostream& log);

}  // namespace tat
