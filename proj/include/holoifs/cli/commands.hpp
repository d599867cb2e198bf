#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "holoifs/maps.hpp"

namespace holoifs::cli {

enum ExitCode : int {
    kExitPass = 0,
    kExitFail = 1,
    kExitConfig = 2,
    kExitBudget = 3,
    kExitInconclusive = 4,
};

/// Binary P5 graymap, pixels × pixels, over the bounding box of `points`
/// grown to a square and padded 5% per side. Hits are 0, background 255.
std::string render_pgm(const std::vector<Complex>& points, int pixels);

/// Runs the command line `args` (without the program name) and returns the
/// exit code. Normal output goes to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace holoifs::cli
