#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace blockrecon::cli {

/// Runs one command line (without the program name). Exit status: 0 on success, 1 when a run
/// fails or a check does not match, 2 for usage and validation errors.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int dispatch(int argc, char** argv);

} // namespace blockrecon::cli
