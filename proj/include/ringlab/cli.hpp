#pragma once

#include <iosfwd>

namespace ringlab::cli {

// Exit codes: 0 success, 1 verification or mathematical failure, 2 usage or parse error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ringlab::cli
