#pragma once

#include <ostream>

namespace survrel::cli {

// Exit codes: 0 success, 1 input/validation error, 2 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace survrel::cli
