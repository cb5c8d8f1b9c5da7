#include "bfmin/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bfmin::kernels {

namespace {

bool use_parallel(std::size_t n) {
#ifdef _OPENMP
    return n >= parallel_threshold && omp_get_max_threads() > 1;
#else
    (void)n;
    return false;
#endif
}

}  // namespace

bool any_contained_serial(const Cube& cube, std::span<const Bits> minterms) {
    for (const Bits& m : minterms)
        if (cube.contains(m)) return true;
    return false;
}

bool any_contained_parallel(const Cube& cube, std::span<const Bits> minterms) {
    bool found = false;
    const auto n = static_cast<std::int64_t>(minterms.size());
#ifdef _OPENMP
#pragma omp parallel for reduction(|| : found)
#endif
    for (std::int64_t i = 0; i < n; ++i) found = found || cube.contains(minterms[i]);
    return found;
}

bool any_contained(const Cube& cube, std::span<const Bits> minterms) {
    return use_parallel(minterms.size()) ? any_contained_parallel(cube, minterms)
                                         : any_contained_serial(cube, minterms);
}

std::uint64_t count_contained_serial(const Cube& cube, std::span<const Bits> minterms) {
    std::uint64_t count = 0;
    for (const Bits& m : minterms) count += cube.contains(m);
    return count;
}

std::uint64_t count_contained_parallel(const Cube& cube, std::span<const Bits> minterms) {
    std::uint64_t count = 0;
    const auto n = static_cast<std::int64_t>(minterms.size());
#ifdef _OPENMP
#pragma omp parallel for reduction(+ : count)
#endif
    for (std::int64_t i = 0; i < n; ++i) count += cube.contains(minterms[i]);
    return count;
}

std::uint64_t count_contained(const Cube& cube, std::span<const Bits> minterms) {
    return use_parallel(minterms.size()) ? count_contained_parallel(cube, minterms)
                                         : count_contained_serial(cube, minterms);
}

void containment_counts_serial(const Cover& cover, std::span<const Bits> minterms,
                               std::span<std::uint32_t> out) {
    for (std::size_t i = 0; i < minterms.size(); ++i) {
        std::uint32_t c = 0;
        for (const Cube& cube : cover.cubes()) c += cube.contains(minterms[i]);
        out[i] = c;
    }
}

void containment_counts_parallel(const Cover& cover, std::span<const Bits> minterms,
                                 std::span<std::uint32_t> out) {
    const auto n = static_cast<std::int64_t>(minterms.size());
#ifdef _OPENMP
#pragma omp parallel for
#endif
    for (std::int64_t i = 0; i < n; ++i) {
        std::uint32_t c = 0;
        for (const Cube& cube : cover.cubes()) c += cube.contains(minterms[i]);
        out[i] = c;
    }
}

std::vector<std::uint32_t> containment_counts(const Cover& cover, std::span<const Bits> minterms) {
    std::vector<std::uint32_t> out(minterms.size());
    if (use_parallel(minterms.size())) containment_counts_parallel(cover, minterms, out);
    else containment_counts_serial(cover, minterms, out);
    return out;
}

void eval_many_serial(const Cover& cover, std::span<const Bits> minterms,
                      std::span<std::uint8_t> out) {
    for (std::size_t i = 0; i < minterms.size(); ++i) out[i] = cover.eval(minterms[i]);
}

void eval_many_parallel(const Cover& cover, std::span<const Bits> minterms,
                        std::span<std::uint8_t> out) {
    const auto n = static_cast<std::int64_t>(minterms.size());
#ifdef _OPENMP
#pragma omp parallel for
#endif
    for (std::int64_t i = 0; i < n; ++i) out[i] = cover.eval(minterms[i]);
}

std::vector<std::uint8_t> eval_many(const Cover& cover, std::span<const Bits> minterms) {
    std::vector<std::uint8_t> out(minterms.size());
    if (use_parallel(minterms.size())) eval_many_parallel(cover, minterms, out);
    else eval_many_serial(cover, minterms, out);
    return out;
}

}  // namespace bfmin::kernels
