#pragma once

#include <iosfwd>

namespace pulsent::cli {

// Exit codes: 0 success, 1 runtime failure, 2 bad usage or config, 3 numerical failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pulsent::cli
