#pragma once

#include "reflexion/io.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace reflexion {

/// Runs the command line `args` (without the program name). Reports go to
/// `out`, diagnostics to `err`. Exit codes: 0 success, 1 a requested degree
/// is not regular, 2 usage or parse error, 3 cap exceeded, 4 invariant violation.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Human-readable rendering of a report. Carries exactly the data of the JSON form.
std::string render_table(const Json& report);

} // namespace reflexion
