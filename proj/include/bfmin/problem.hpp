#pragma once

#include <cstdint>
#include <vector>

#include "bfmin/bits.hpp"

namespace bfmin {

// Two-level minimization instance. Minterms listed in on/off; everything
// else is implicitly don't-care.
struct Problem {
    std::uint32_t width = 0;
    std::vector<Bits> on;   // sorted by value, unique
    std::vector<Bits> off;  // sorted by value, unique

    // Normalizes (sort + dedup) and validates: widths match, on ∩ off = ∅.
    static Problem make(std::uint32_t width, std::vector<Bits> on, std::vector<Bits> off);
};

}  // namespace bfmin
