#pragma once

#include <cstdint>
#include <span>

#include "bfmin/cube.hpp"
#include "bfmin/problem.hpp"

namespace bfmin {

// Ceilings for the exact engine. Tripping one raises IntractableError,
// which the CLI maps to exit 3.
struct ExactLimits {
    std::uint64_t max_primes = 5'000'000;  // generated prime cubes, pre-dedup
    std::uint64_t max_nodes = 5'000'000;   // branch-and-bound search nodes
};

// All prime implicants: off-disjoint, containing at least one on minterm,
// and maximal. Classic tabulation over on ∪ dc is infeasible with the
// implicit don't-care set, so primes are enumerated per on minterm: the
// maximal off-disjoint cubes containing m correspond one-to-one to the
// minimal transversals of the difference sets {r xor m : r in off}.
Cover prime_implicants(const Problem& problem, const ExactLimits& limits = {});

// Primes that are the unique cover of at least one on minterm.
Cover essential_primes(const Cover& primes, std::span<const Bits> on);

// Minimum-cost subset of primes covering every on minterm. Cost is
// (cube_count, literal_count) lexicographic. Branch-and-bound with
// essential extraction, row dominance, column dominance and an
// independent-row-set lower bound; all orderings fixed, so the chosen
// optimum is deterministic.
Cover unate_cover(const Cover& primes, std::span<const Bits> on,
                  const ExactLimits& limits = {});

Cover minimize_exact(const Problem& problem, const ExactLimits& limits = {});

}  // namespace bfmin
