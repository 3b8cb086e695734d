#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qacause::cli {

// Exit codes: 0 success, 1 domain error, 2 parse or usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qacause::cli
