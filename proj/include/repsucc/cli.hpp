#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace repsucc::cli {

/// Runs the command line front end. `args` excludes the program name.
/// Returns 0 on success, 1 on domain errors (e.g. a non-significant original
/// study), 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace repsucc::cli
