#pragma once

#include <string>
#include <vector>

namespace nlcseq {

// Full command-line driver; args excludes the program name. Returns the
// process exit code: 0 success (and all verified bounds satisfied), 1 bound
// violation from `verify`, 2 configuration, input, or usage errors.
int run_cli(const std::vector<std::string>& args);

}  // namespace nlcseq
