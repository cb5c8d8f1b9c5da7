#pragma once

#include <cstdint>
#include <span>

#include "bfmin/cube.hpp"
#include "bfmin/problem.hpp"

namespace bfmin {

// The expand → irredundant → reduce loop stops as soon as CoverCost fails
// to improve, and always within this many iterations.
inline constexpr std::uint32_t espresso_max_iterations = 64;

// Grows every cube to a prime against the off-set. Cubes are processed
// largest-first (then textual order); positions are freed in ascending
// index when the freed cube stays off-disjoint. Cubes subsumed by an
// already-produced prime are dropped.
Cover expand(const Cover& cover, std::span<const Bits> off);

// Subset of the cover still covering all on minterms, minimal under
// single-cube removal: relatively essential cubes first, then greedy by
// newly covered count, ties and removals in textual order.
Cover irredundant(const Cover& cover, std::span<const Bits> on);

// Shrinks each cube (largest-first, then textual order) to the smallest
// subcube covering the on minterms no other current cube covers.
Cover reduce(const Cover& cover, std::span<const Bits> on);

Cover minimize_heuristic(const Problem& problem);

// Same loop, but started from a caller-supplied cover instead of the on
// minterms; the seed must cover every on minterm and avoid the off-set.
// This is the warm start used by partition merging.
Cover minimize_heuristic_seeded(const Problem& problem, const Cover& seed);

// Drops cubes not needed to keep every region (a set of committed cubes)
// fully covered; used by the streaming path where the required on-side is
// a union of cubes rather than a minterm list.
Cover region_irredundant(const Cover& cover, std::span<const Cube> regions);

}  // namespace bfmin
