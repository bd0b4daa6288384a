#pragma once

#include <iosfwd>

namespace tentsolve::cli {

/// Exit codes: 0 success, 1 failed run, 2 bad invocation or configuration.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tentsolve::cli
