#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace oql {

/// Run the command-line interface on the given arguments (program name
/// excluded). Reports go to `out`, errors to `err`.
///
/// Exit status: 0 when every requested check passed (or the command only
/// computes), 1 when a law was violated or the input is not a valid lattice
/// (witnesses printed), 2 on unusable input: parse errors, unknown labels,
/// bad usage, exceeded size guards.
int run_cli(std::vector<std::string> args, std::ostream& out,
            std::ostream& err);

}  // namespace oql
