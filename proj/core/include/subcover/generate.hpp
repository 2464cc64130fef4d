#pragma once

#include <cstdint>

#include "subcover/reduction.hpp"

namespace subcover {

// Seeded instance generators. `guillotine` recursively splits a bounding
// rectangle by full axis-parallel cuts until the requested number of
// rectangular rooms exists; `grid` is a full rows x cols lattice; `gadget`
// emits one isolated variable gadget of the chosen problem.
struct GeneratorSpec {
    enum class Kind { guillotine, grid, gadget };
    Kind kind = Kind::guillotine;
    int rooms = 1;             // guillotine
    int rows = 1, cols = 1;    // grid
    Problem problem = Problem::stab;  // gadget
    int m = 1;                        // gadget capacity
    Variant variant = Variant::rect;  // gadget flavor
    std::uint64_t seed = 0;
};

SegmentSet generate(const GeneratorSpec& spec);

}  // namespace subcover
