#pragma once

#include <string>
#include <vector>

namespace dcomb::cli {

/// Parse argv-style arguments (program name excluded), run the requested
/// subcommand, and append whatever it prints to `out` / `err`.
///
/// Exit codes: 0 success (or invariance holds), 1 meaningful negative
/// (deviation above tolerance), 2 usage error, 3 precondition failure
/// (a sampled shift that is not a bijection of the Brillouin zone).
int run(const std::vector<std::string>& args, std::string& out, std::string& err);

}  // namespace dcomb::cli
