#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bfmin/cube.hpp"

namespace bfmin::kernels {

// Data-parallel scans over minterm arrays — the hot loops of every
// minimizer phase. Each kernel has a serial reference and an OpenMP
// version; the unsuffixed name dispatches on input size. The parallel
// forms use only order-independent reductions or per-index writes, so
// both versions produce identical results (asserted in tests, timed
// against each other in the benchmark target).

// True iff the cube contains at least one of the minterms.
bool any_contained_serial(const Cube& cube, std::span<const Bits> minterms);
bool any_contained_parallel(const Cube& cube, std::span<const Bits> minterms);
bool any_contained(const Cube& cube, std::span<const Bits> minterms);

// Number of minterms the cube contains.
std::uint64_t count_contained_serial(const Cube& cube, std::span<const Bits> minterms);
std::uint64_t count_contained_parallel(const Cube& cube, std::span<const Bits> minterms);
std::uint64_t count_contained(const Cube& cube, std::span<const Bits> minterms);

// out[i] = number of cover cubes containing minterms[i].
void containment_counts_serial(const Cover& cover, std::span<const Bits> minterms,
                               std::span<std::uint32_t> out);
void containment_counts_parallel(const Cover& cover, std::span<const Bits> minterms,
                                 std::span<std::uint32_t> out);
std::vector<std::uint32_t> containment_counts(const Cover& cover, std::span<const Bits> minterms);

// out[i] = 1 iff some cover cube contains minterms[i].
void eval_many_serial(const Cover& cover, std::span<const Bits> minterms,
                      std::span<std::uint8_t> out);
void eval_many_parallel(const Cover& cover, std::span<const Bits> minterms,
                        std::span<std::uint8_t> out);
std::vector<std::uint8_t> eval_many(const Cover& cover, std::span<const Bits> minterms);

// Inputs smaller than this run serially; parallel setup costs more than it saves.
inline constexpr std::size_t parallel_threshold = 1 << 13;

}  // namespace bfmin::kernels
