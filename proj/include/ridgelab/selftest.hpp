#pragma once

#include <iosfwd>

namespace ridgelab {

// Runs the operator-identity invariant suite on seeded random instances and
// prints one pass/fail line per check. Returns the number of failures.
int run_selftest(std::ostream& out);

}  // namespace ridgelab
