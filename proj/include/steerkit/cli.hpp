#pragma once

namespace steerkit {

// Command-line entry point. Exit codes: 0 success, 2 input validation
// failure, 3 solver failure, 64 usage error.
int run_cli(int argc, const char* const* argv);

}  // namespace steerkit
