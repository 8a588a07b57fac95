#pragma once

namespace ridgelab {

// Parses and runs one CLI invocation. Exit codes: 0 success, 2 usage or bad
// inputs, 3 numeric failure, 4 IO failure.
int run_cli(int argc, const char* const* argv);

}  // namespace ridgelab
