// cli.hpp
// Command-line front end, callable in-process for tests.

#pragma once

#include <iosfwd>

namespace mzi {

// Exit codes: 0 success, 2 usage error, 1 runtime error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace mzi
