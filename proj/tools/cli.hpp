#pragma once

#include <ostream>

namespace graphot::cli {

/// Runs one command line. Exit codes: 0 success, 1 usage or validation
/// error, 2 solver non-convergence.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace graphot::cli
