// Serial reference vs OpenMP kernels across widths and input sizes. The
// interesting readout is where the crossover sits relative to
// kernels::parallel_threshold on the machine at hand.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "bfmin/kernels.hpp"
#include "bfmin/rng.hpp"

namespace {

using namespace bfmin;

std::vector<Bits> random_minterms(std::uint32_t width, std::size_t count, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<Bits> minterms;
    minterms.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Bits b(width);
        for (std::uint32_t w = 0; w * 64 < width; ++w) b.set_word(w, rng.next());
        minterms.push_back(std::move(b));
    }
    return minterms;
}

// A cube fixing the low half of the positions, so containment checks do
// real work but still hit on a predictable fraction of inputs.
Cube half_fixed_cube(std::uint32_t width) {
    Cube cube = Cube::top(width);
    for (std::uint32_t p = 0; p < width / 2; ++p) cube = cube.with_fixed(p, (p & 1) != 0);
    return cube;
}

Cover random_cover(std::uint32_t width, std::size_t cubes, std::uint64_t seed) {
    SplitMix64 rng(seed);
    Cover cover(width);
    for (std::size_t i = 0; i < cubes; ++i) {
        Cube cube = Cube::top(width);
        for (std::uint32_t p = 0; p < width; ++p)
            if (rng.below(3) == 0) cube = cube.with_fixed(p, rng.below(2) == 1);
        cover.add(cube);
    }
    return cover;
}

void args_width_by_size(benchmark::internal::Benchmark* b) {
    for (int width : {16, 64, 128})
        for (int size : {1 << 10, 1 << 16, 1 << 20}) b->Args({width, size});
}

template <std::uint64_t (*Kernel)(const Cube&, std::span<const Bits>)>
void bench_count_contained(benchmark::State& state) {
    const auto width = static_cast<std::uint32_t>(state.range(0));
    const auto size = static_cast<std::size_t>(state.range(1));
    const Cube cube = half_fixed_cube(width);
    const std::vector<Bits> minterms = random_minterms(width, size, 1);
    for (auto _ : state) benchmark::DoNotOptimize(Kernel(cube, minterms));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(size));
}

template <void (*Kernel)(const Cover&, std::span<const Bits>, std::span<std::uint32_t>)>
void bench_containment_counts(benchmark::State& state) {
    const auto width = static_cast<std::uint32_t>(state.range(0));
    const auto size = static_cast<std::size_t>(state.range(1));
    const Cover cover = random_cover(width, 32, 2);
    const std::vector<Bits> minterms = random_minterms(width, size, 3);
    std::vector<std::uint32_t> out(size);
    for (auto _ : state) {
        Kernel(cover, minterms, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(size));
}

template <void (*Kernel)(const Cover&, std::span<const Bits>, std::span<std::uint8_t>)>
void bench_eval_many(benchmark::State& state) {
    const auto width = static_cast<std::uint32_t>(state.range(0));
    const auto size = static_cast<std::size_t>(state.range(1));
    const Cover cover = random_cover(width, 32, 4);
    const std::vector<Bits> minterms = random_minterms(width, size, 5);
    std::vector<std::uint8_t> out(size);
    for (auto _ : state) {
        Kernel(cover, minterms, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(size));
}

BENCHMARK(bench_count_contained<kernels::count_contained_serial>)
    ->Name("count_contained/serial")
    ->Apply(args_width_by_size);
BENCHMARK(bench_count_contained<kernels::count_contained_parallel>)
    ->Name("count_contained/parallel")
    ->Apply(args_width_by_size);
BENCHMARK(bench_containment_counts<kernels::containment_counts_serial>)
    ->Name("containment_counts/serial")
    ->Apply(args_width_by_size);
BENCHMARK(bench_containment_counts<kernels::containment_counts_parallel>)
    ->Name("containment_counts/parallel")
    ->Apply(args_width_by_size);
BENCHMARK(bench_eval_many<kernels::eval_many_serial>)
    ->Name("eval_many/serial")
    ->Apply(args_width_by_size);
BENCHMARK(bench_eval_many<kernels::eval_many_parallel>)
    ->Name("eval_many/parallel")
    ->Apply(args_width_by_size);

}  // namespace

BENCHMARK_MAIN();
