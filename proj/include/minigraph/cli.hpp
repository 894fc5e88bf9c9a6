#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace minigraph::cli {

// Runs one subcommand. Exit codes: 0 verdict-success, 1 verdict-failure,
// 2 usage or input-parse errors. A JSON report goes to `out` for codes 0/1;
// human-readable diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace minigraph::cli
