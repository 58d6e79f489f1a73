#pragma once

#include <iosfwd>

namespace zplot {

// Exit codes: 0 success / verification pass, 1 verification failure,
// 2 usage error, 3 I/O error.  Data goes to `out` (or --out files),
// diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace zplot
