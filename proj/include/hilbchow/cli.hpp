#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hilbchow {

// Command dispatch. Returns 0 on success, 1 on a mathematical-consistency
// failure, 2 on input errors. Machine output goes to `out`, diagnostics to
// `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hilbchow
