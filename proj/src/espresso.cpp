#include "bfmin/espresso.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "bfmin/error.hpp"
#include "bfmin/kernels.hpp"

namespace bfmin {

namespace {

// Largest cube first (most free positions), then textual order.
std::vector<std::uint32_t> size_order(const std::vector<Cube>& cubes) {
    std::vector<std::uint32_t> order(cubes.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        const std::uint32_t fa = cubes[a].free_count(), fb = cubes[b].free_count();
        if (fa != fb) return fa > fb;
        return textual_less(cubes[a], cubes[b]);
    });
    return order;
}

// Greedy single-pass expansion of one cube. For each off row the mask of
// cared positions where it differs is tracked as a live-bit count; freeing
// position p is blocked exactly when some row's count would reach zero,
// i.e. its whole difference lies in the freed set plus p.
class Expander {
public:
    Expander(std::uint32_t width, std::span<const Bits> off)
        : width_(width), off_(off), count_(off.size()), rows_with_(width) {}

    Cube expand_one(const Cube& cube) {
        for (auto& rows : rows_with_) rows.clear();
        const Bits& care = cube.care();
        const Bits& value = cube.value();
        for (std::size_t r = 0; r < off_.size(); ++r) {
            std::uint32_t diff_bits = 0;
            for (std::uint32_t w = 0; w < care.word_count(); ++w) {
                std::uint64_t diff = (off_[r].word(w) ^ value.word(w)) & care.word(w);
                while (diff) {
                    const auto pos = 64 * w + static_cast<std::uint32_t>(std::countr_zero(diff));
                    diff &= diff - 1;
                    rows_with_[pos].push_back(static_cast<std::uint32_t>(r));
                    ++diff_bits;
                }
            }
            if (diff_bits == 0)
                throw DataError("cube " + cube.to_string() + " intersects the off-set");
            count_[r] = diff_bits;
        }

        Cube result = cube;
        for (std::uint32_t pos = 0; pos < width_; ++pos) {
            if (result.is_free(pos)) continue;
            bool blocked = false;
            for (std::uint32_t r : rows_with_[pos])
                if (count_[r] == 1) {
                    blocked = true;
                    break;
                }
            if (blocked) continue;
            for (std::uint32_t r : rows_with_[pos]) --count_[r];
            result = result.with_free(pos);
        }
        return result;
    }

private:
    std::uint32_t width_;
    std::span<const Bits> off_;
    std::vector<std::uint32_t> count_;
    std::vector<std::vector<std::uint32_t>> rows_with_;
};

}  // namespace

Cover expand(const Cover& cover, std::span<const Bits> off) {
    const auto order = size_order(cover.cubes());
    Expander expander(cover.width(), off);
    std::vector<Cube> primes;
    for (std::uint32_t idx : order) {
        const Cube& cube = cover.cubes()[idx];
        const bool covered = std::any_of(primes.begin(), primes.end(),
                                         [&](const Cube& p) { return p.subsumes(cube); });
        if (covered) continue;
        primes.push_back(expander.expand_one(cube));
    }
    return Cover(cover.width(), std::move(primes));
}

Cover irredundant(const Cover& cover, std::span<const Bits> on) {
    const auto counts = kernels::containment_counts(cover, on);
    for (std::size_t i = 0; i < on.size(); ++i)
        if (counts[i] == 0)
            throw DataError("on minterm " + on[i].to_string() + " not covered");

    // Relatively essential cubes are forced into the result.
    std::vector<char> selected(cover.size(), 0);
    for (std::size_t i = 0; i < on.size(); ++i) {
        if (counts[i] != 1) continue;
        for (std::size_t j = 0; j < cover.size(); ++j)
            if (cover.cubes()[j].contains(on[i])) {
                selected[j] = 1;
                break;
            }
    }

    std::vector<char> covered(on.size(), 0);
    std::size_t uncovered = on.size();
    auto mark = [&](std::size_t j) {
        for (std::size_t i = 0; i < on.size(); ++i)
            if (!covered[i] && cover.cubes()[j].contains(on[i])) {
                covered[i] = 1;
                --uncovered;
            }
    };
    for (std::size_t j = 0; j < cover.size(); ++j)
        if (selected[j]) mark(j);

    // Greedy fill: most newly covered minterms, ties to the textually
    // smaller cube (the cover is stored in textual order).
    while (uncovered > 0) {
        std::size_t best = cover.size();
        std::size_t best_gain = 0;
        for (std::size_t j = 0; j < cover.size(); ++j) {
            if (selected[j]) continue;
            std::size_t gain = 0;
            for (std::size_t i = 0; i < on.size(); ++i)
                if (!covered[i] && cover.cubes()[j].contains(on[i])) ++gain;
            if (gain > best_gain) {
                best_gain = gain;
                best = j;
            }
        }
        selected[best] = 1;
        mark(best);
    }

    // Minimality pass: drop any cube whose minterms are all doubly covered.
    std::vector<std::uint32_t> live_counts(on.size(), 0);
    for (std::size_t j = 0; j < cover.size(); ++j)
        if (selected[j])
            for (std::size_t i = 0; i < on.size(); ++i)
                if (cover.cubes()[j].contains(on[i])) ++live_counts[i];
    for (std::size_t j = 0; j < cover.size(); ++j) {
        if (!selected[j]) continue;
        bool removable = true;
        for (std::size_t i = 0; i < on.size(); ++i)
            if (live_counts[i] == 1 && cover.cubes()[j].contains(on[i])) {
                removable = false;
                break;
            }
        if (!removable) continue;
        selected[j] = 0;
        for (std::size_t i = 0; i < on.size(); ++i)
            if (cover.cubes()[j].contains(on[i])) --live_counts[i];
    }

    std::vector<Cube> out;
    for (std::size_t j = 0; j < cover.size(); ++j)
        if (selected[j]) out.push_back(cover.cubes()[j]);
    return Cover(cover.width(), std::move(out));
}

Cover reduce(const Cover& cover, std::span<const Bits> on) {
    auto counts = kernels::containment_counts(cover, on);
    for (std::size_t i = 0; i < on.size(); ++i)
        if (counts[i] == 0)
            throw DataError("on minterm " + on[i].to_string() + " not covered");

    std::vector<Cube> current(cover.cubes());
    std::vector<char> dead(current.size(), 0);
    for (std::uint32_t idx : size_order(current)) {
        const Cube cube = current[idx];
        // Minterms this cube alone covers pin the smallest subcube.
        Bits all_and(cover.width()), all_or(cover.width());
        bool first = true;
        for (std::size_t i = 0; i < on.size(); ++i) {
            if (counts[i] != 1 || !cube.contains(on[i])) continue;
            if (first) {
                all_and = on[i];
                all_or = on[i];
                first = false;
                continue;
            }
            for (std::uint32_t w = 0; w < all_and.word_count(); ++w) {
                all_and.set_word(w, all_and.word(w) & on[i].word(w));
                all_or.set_word(w, all_or.word(w) | on[i].word(w));
            }
        }
        if (first) {
            // Covers nothing uniquely; the other cubes already suffice.
            dead[idx] = 1;
            for (std::size_t i = 0; i < on.size(); ++i)
                if (cube.contains(on[i])) --counts[i];
            continue;
        }
        Bits care(cover.width());
        for (std::uint32_t w = 0; w < care.word_count(); ++w)
            care.set_word(w, ~(all_and.word(w) ^ all_or.word(w)));
        Cube shrunk(std::move(care), all_and);
        for (std::size_t i = 0; i < on.size(); ++i)
            if (cube.contains(on[i]) && !shrunk.contains(on[i])) --counts[i];
        current[idx] = std::move(shrunk);
    }

    std::vector<Cube> out;
    for (std::size_t j = 0; j < current.size(); ++j)
        if (!dead[j]) out.push_back(current[j]);
    return Cover(cover.width(), std::move(out));
}

namespace {

Cover improvement_loop(const Problem& problem, Cover cover) {
    Cover best(problem.width);
    CoverCost best_cost{~0ULL, ~0ULL};
    for (std::uint32_t iteration = 0; iteration < espresso_max_iterations; ++iteration) {
        const Cover expanded = expand(cover, problem.off);
        Cover irred = irredundant(expanded, problem.on);
        const CoverCost cost = irred.cost();
        if (cost < best_cost) {
            best = std::move(irred);
            best_cost = cost;
        } else {
            break;
        }
        cover = reduce(best, problem.on);
    }
    return best;
}

}  // namespace

Cover minimize_heuristic(const Problem& problem) {
    if (problem.on.empty()) return Cover(problem.width);
    std::vector<Cube> seed;
    seed.reserve(problem.on.size());
    for (const Bits& m : problem.on) seed.push_back(Cube::minterm(m));
    return improvement_loop(problem, Cover(problem.width, std::move(seed)));
}

Cover minimize_heuristic_seeded(const Problem& problem, const Cover& seed) {
    if (problem.on.empty()) return Cover(problem.width);
    return improvement_loop(problem, seed);
}

Cover region_irredundant(const Cover& cover, std::span<const Cube> regions) {
    std::vector<Cube> kept(cover.cubes());
    // Textual order removal attempts; a cube stays when some region slice
    // it covers is covered by nothing else.
    for (std::size_t j = 0; j < kept.size();) {
        std::vector<Cube> others;
        others.reserve(kept.size() - 1);
        for (std::size_t k = 0; k < kept.size(); ++k)
            if (k != j) others.push_back(kept[k]);
        bool removable = true;
        for (const Cube& region : regions) {
            if (!cube_difference(region, others).empty()) {
                removable = false;
                break;
            }
        }
        if (removable) kept.erase(kept.begin() + j);
        else ++j;
    }
    return Cover(cover.width(), std::move(kept));
}

}  // namespace bfmin
