#pragma once

#include <string>
#include <vector>

namespace semprop::cli {

// Exit codes: 0 clean, 1 findings at or above the fail-on threshold,
// 2 usage or I/O error.
int run(const std::vector<std::string>& args);
int run(int argc, const char* const* argv);

}  // namespace semprop::cli
