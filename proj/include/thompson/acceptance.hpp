#pragma once

// The acceptance suite: one PASS/FAIL line per criterion, informational
// lines prefixed by "  #". Every oracle is regenerated on the spot.

#include <ostream>

namespace thompson::acceptance {

/// Runs every criterion; true when all pass.
bool run_all(std::ostream& out);

}  // namespace thompson::acceptance
