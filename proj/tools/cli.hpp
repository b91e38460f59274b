#pragma once

#include <iosfwd>

namespace probalab::cli {

/// Exit codes: 0 every check passed, 1 some check failed (or a numerical
/// error), 2 usage error.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace probalab::cli
