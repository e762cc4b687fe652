#pragma once

#include <iosfwd>

namespace holed {

/// Exit codes: 0 success, 2 input error, 3 engine error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace holed
