#pragma once

// Command-line surface: simulate, detect, replay, evaluate, report, defaults.
//
// Exit status: 0 on success (for detect: the run ended in a terminal
// ignition state), 1 on a runtime error, 2 on a usage error.

#include <iosfwd>

namespace ccl {

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ccl
