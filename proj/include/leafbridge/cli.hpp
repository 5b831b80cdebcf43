#pragma once

#include <iosfwd>

namespace leafbridge::cli {

/// Runs the command line; returns 0 on success or pass, 1 when a checked
/// property fails (witness on `out`), 2 on input errors (message on `err`).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace leafbridge::cli
