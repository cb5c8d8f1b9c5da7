#pragma once

#include <cstdint>
#include <vector>

#include "bfmin/binarize.hpp"
#include "bfmin/cube.hpp"
#include "bfmin/problem.hpp"

namespace bfmin {

// Ground-truth dataset: every planted rule implies class 1, class-0 rows
// are sampled outside all rules.
struct PlantedSpec {
    std::uint32_t width = 0;
    std::vector<Cube> rules;
    std::uint64_t n_rows = 0;
    double positive_fraction = 0.0;
    std::uint64_t seed = 0;
};

// Emits a table with binary columns f1..f<width> (f1 = bit position 0)
// and a trailing "label" column. Positive rows come first.
RawTable generate_planted(const PlantedSpec& spec);

// Exhaustive oracles. 3^width cube enumeration, so width is capped at 8.
inline constexpr std::uint32_t oracle_width_limit = 8;

struct BruteMinResult {
    std::uint64_t min_cubes = 0;
    Cover witness;
};

// True optimum by subset search of increasing cardinality over all
// off-disjoint cubes.
BruteMinResult brute_min_cover(const Problem& problem);

// All cubes passing the prime definition check.
Cover oracle_primes(const Problem& problem);

// Each minterm lands in on/off/don't-care independently with the given
// probabilities, drawn from a per-minterm stream so the instance does not
// depend on enumeration order.
Problem random_instance(std::uint32_t width, double on_fraction, double off_fraction,
                        std::uint64_t seed);

}  // namespace bfmin
