#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace delsynth {

/// Command-line entry point, separated from main() so tests can drive it
/// in-process. Exit codes: 0 success / true verdict, 1 semantic false or
/// failed checks, 2 input error, 3 undefined update.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace delsynth
