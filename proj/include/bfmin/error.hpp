#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bfmin {

// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input: bad file syntax, width mismatches, unknown columns,
// label values outside {0,1}, conflicting observations under policy=error.
struct DataError : Error {
    using Error::Error;
};

// The exact engine exceeded a configured resource ceiling. Callers can
// retry with the heuristic engine or raise the ceilings.
struct IntractableError : Error {
    enum class Limit { primes, nodes, minterms };

    IntractableError(Limit limit, std::uint64_t ceiling)
        : Error(message(limit, ceiling)), limit(limit), ceiling(ceiling) {}

    Limit limit;
    std::uint64_t ceiling;

private:
    static std::string message(Limit limit, std::uint64_t ceiling) {
        const char* what = limit == Limit::primes  ? "prime implicant ceiling"
                         : limit == Limit::nodes   ? "branch-and-bound node ceiling"
                                                   : "minterm expansion ceiling";
        return std::string("exact-intractable: ") + what + " of " +
               std::to_string(ceiling) +
               " exceeded; use the heuristic engine or raise the limit";
    }
};

}  // namespace bfmin
