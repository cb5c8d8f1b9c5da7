#include "bfmin/problem.hpp"

#include <algorithm>

#include "bfmin/error.hpp"

namespace bfmin {

Problem Problem::make(std::uint32_t width, std::vector<Bits> on, std::vector<Bits> off) {
    if (width == 0) throw DataError("problem width must be positive");
    for (const Bits& m : on)
        if (m.width() != width) throw DataError("on minterm width mismatch");
    for (const Bits& m : off)
        if (m.width() != width) throw DataError("off minterm width mismatch");
    sort_unique_minterms(on);
    sort_unique_minterms(off);

    // Both sides sorted: a single merge pass finds any overlap.
    auto a = on.begin();
    auto b = off.begin();
    while (a != on.end() && b != off.end()) {
        if (*a == *b)
            throw DataError("minterm " + a->to_string() + " appears in both on and off sets");
        if (value_less(*a, *b)) ++a;
        else ++b;
    }
    return Problem{width, std::move(on), std::move(off)};
}

}  // namespace bfmin
