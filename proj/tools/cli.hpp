#pragma once

#include <ostream>

namespace segre {

/// Runs the segre command line; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace segre
