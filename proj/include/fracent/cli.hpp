#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fracent::cli {

enum exit_code : int { ok = 0, user_error = 1, numeric_failure = 2 };

// args exclude the program name; output goes to out (or --out), diagnostics to err
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace fracent::cli
