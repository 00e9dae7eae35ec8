#pragma once

#include <iosfwd>

namespace orbithull {

/// Exit codes: 0 ok, 1 parse error, 2 precondition violation, 3 verification failures.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace orbithull
