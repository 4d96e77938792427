#pragma once

#include <cstdint>

#include "nucgrow/kinetics.hpp"

namespace nucgrow {

// Naive total-rate sampler: every step enumerates all healthy in-box
// sites, recomputes each hazard from scratch, and picks the next infection
// by cumulative scan. Deliberately shares no machinery with the frontier
// engine; it exists as the distributional oracle the engine is checked
// against.
double reference_relaxation_time(const ProcessParams& params, std::uint64_t seed,
                                 std::uint64_t budget = 100000000ull);

}  // namespace nucgrow
