#pragma once

#include <cstdint>
#include <ostream>

/// Runs the built-in consistency checks, one line per check. Randomised
/// checks draw from a generator seeded with `seed`.
bool run_selftest(std::uint64_t seed, std::ostream& out);
