#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace totpos::cli {

enum ExitCode { ok = 0, fails = 1, usage = 2, inconclusive = 3 };

// args excludes the program name.  Reports go to `out` as JSON,
// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace totpos::cli
