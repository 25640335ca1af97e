#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pdakit::cli {

/// Runs one command line (without the program name). Primary output goes to
/// `out` unless --out names a file; diagnostics go to `err`.
/// Exit codes: 0 success, 1 invalid PDA or failed decode, 2 usage or
/// domain error, 3 size cap exceeded.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pdakit::cli
