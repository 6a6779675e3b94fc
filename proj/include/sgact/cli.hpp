#pragma once

#include <string>
#include <vector>

namespace sgact::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Run one CLI invocation. args excludes the program name. Returns 0 on
/// success, 1 on validation/usage errors, 2 on numerical non-convergence.
int run(const std::vector<std::string>& args);

} // namespace sgact::cli
