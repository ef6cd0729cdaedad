#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace niep3 {
namespace cli {

/// Dispatches one command line. Returns 0 for pass/feasible verdicts, 1 for
/// fail/infeasible verdicts, 2 for usage or input errors. Output goes to
/// `out` (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cli
}  // namespace niep3
