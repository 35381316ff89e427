#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace circa {

/// Full command-line surface; args excludes the program name.
/// Returns 0 on success, 1 on domain errors, 2 on usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

extern const char* const kCliVersion;

}  // namespace circa
