#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace levyconv {

/// Default output directory when --out is not given.
inline constexpr const char* kOutDirEnv = "LEVYCONV_OUT";

/// Runs one subcommand. Exit codes: 0 success, 1 runtime error, 2 configuration
/// error (bad arguments, malformed input, violated hypotheses).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace levyconv
