#pragma once

#include <iosfwd>

namespace filldist {

/// Full CLI entry point, parameterized on streams so tests can run it
/// in-process.  Returns the process exit code: 0 success, 2 invalid
/// configuration, 1 I/O or internal failure.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace filldist
