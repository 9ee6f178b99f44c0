#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tacx {

/// Exit codes: 0 every reported check holds, 1 a mathematical check failed,
/// 2 bad input or usage.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tacx
