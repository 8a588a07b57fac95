#pragma once

#include <stdexcept>
#include <string>

namespace ridgelab {

// Solver breakdowns, divergence, non-finite results.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// File reading/writing failures.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ridgelab
