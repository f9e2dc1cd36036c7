#pragma once

#include <ostream>

namespace holosym {

/// Entry point of the `holosym` command (list, analyze, verify).
/// Exit codes: 0 success / all suites pass, 1 a suite failed, 2 usage,
/// domain or numeric error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace holosym
