#include "bfmin/synth.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bfmin/error.hpp"
#include "bfmin/rng.hpp"

namespace bfmin {

namespace {

Bits random_bits(SplitMix64& rng, std::uint32_t width) {
    Bits b(width);
    for (std::uint32_t i = 0; i < b.word_count(); ++i) b.set_word(i, rng.next());
    return b;
}

void check_oracle_width(std::uint32_t width) {
    if (width == 0 || width > oracle_width_limit)
        throw DataError("oracle width must be 1.." + std::to_string(oracle_width_limit));
}

// All 3^width cubes, textual order not guaranteed; callers sort.
std::vector<Cube> all_cubes(std::uint32_t width) {
    std::vector<Cube> cubes;
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < width; ++i) total *= 3;
    cubes.reserve(total);
    for (std::uint64_t code = 0; code < total; ++code) {
        Bits care(width), value(width);
        std::uint64_t rest = code;
        for (std::uint32_t pos = 0; pos < width; ++pos) {
            const auto trit = static_cast<std::uint32_t>(rest % 3);
            rest /= 3;
            if (trit == 0) continue;  // free
            care.set(pos, true);
            if (trit == 2) value.set(pos, true);
        }
        cubes.emplace_back(std::move(care), std::move(value));
    }
    return cubes;
}

bool contains_any(const Cube& cube, const std::vector<Bits>& minterms) {
    for (const Bits& m : minterms)
        if (cube.contains(m)) return true;
    return false;
}

}  // namespace

RawTable generate_planted(const PlantedSpec& spec) {
    if (spec.width == 0) throw DataError("planted width must be positive");
    for (const Cube& rule : spec.rules)
        if (rule.width() != spec.width) throw DataError("planted rule width mismatch");
    if (spec.positive_fraction < 0.0 || spec.positive_fraction > 1.0)
        throw DataError("positive fraction must be in [0,1]");

    const auto n_pos = static_cast<std::uint64_t>(
        std::llround(static_cast<double>(spec.n_rows) * spec.positive_fraction));
    const std::uint64_t n_neg = spec.n_rows - n_pos;
    if (n_pos > 0 && spec.rules.empty())
        throw DataError("positive rows requested but no planted rules given");
    if (n_neg > 0 && cube_difference(Cube::top(spec.width), spec.rules).empty())
        throw DataError("planted rules cover the whole space; no class-0 row exists");

    SplitMix64 rng(spec.seed);
    RawTable table;
    for (std::uint32_t pos = 0; pos < spec.width; ++pos)
        table.columns.push_back("f" + std::to_string(pos + 1));
    table.columns.emplace_back("label");

    auto emit = [&](const Bits& bits, const char* label) {
        std::vector<std::string> row;
        row.reserve(spec.width + 1);
        for (std::uint32_t pos = 0; pos < spec.width; ++pos)
            row.emplace_back(bits.get(pos) ? "1" : "0");
        row.emplace_back(label);
        table.rows.push_back(std::move(row));
    };

    for (std::uint64_t i = 0; i < n_pos; ++i) {
        const Cube& rule = spec.rules[rng.below(spec.rules.size())];
        Bits bits = random_bits(rng, spec.width);
        // Force the rule's literals; free positions keep their random draw.
        for (std::uint32_t pos = 0; pos < spec.width; ++pos)
            if (!rule.is_free(pos)) bits.set(pos, rule.literal(pos));
        emit(bits, "1");
    }
    for (std::uint64_t i = 0; i < n_neg; ++i) {
        Bits bits = random_bits(rng, spec.width);
        while (std::any_of(spec.rules.begin(), spec.rules.end(),
                           [&](const Cube& r) { return r.contains(bits); }))
            bits = random_bits(rng, spec.width);
        emit(bits, "0");
    }
    return table;
}

namespace {

// Depth-limited set cover: branch on the lowest-value uncovered minterm,
// trying candidate cubes in textual order. One pick covers at most
// max_gain minterms, so a branch with more uncovered minterms than
// depth_left * max_gain can be abandoned without losing any solution.
bool cover_search(const std::vector<Cube>& candidates,
                  const std::vector<std::vector<std::uint32_t>>& coverers,
                  const std::vector<Bits>& on, std::vector<std::uint32_t>& cover_count,
                  std::size_t uncovered, std::size_t max_gain, std::uint32_t depth_left,
                  std::vector<std::uint32_t>& chosen) {
    if (uncovered == 0) return true;
    if (uncovered > static_cast<std::size_t>(depth_left) * max_gain) return false;
    std::size_t target = 0;
    while (cover_count[target] != 0) ++target;
    for (std::uint32_t c : coverers[target]) {
        chosen.push_back(c);
        std::size_t gained = 0;
        for (std::size_t i = 0; i < on.size(); ++i)
            if (candidates[c].contains(on[i]) && cover_count[i]++ == 0) ++gained;
        if (cover_search(candidates, coverers, on, cover_count, uncovered - gained, max_gain,
                         depth_left - 1, chosen))
            return true;
        for (std::size_t i = 0; i < on.size(); ++i)
            if (candidates[c].contains(on[i])) --cover_count[i];
        chosen.pop_back();
    }
    return false;
}

}  // namespace

BruteMinResult brute_min_cover(const Problem& problem) {
    check_oracle_width(problem.width);
    if (problem.on.empty()) return {0, Cover(problem.width)};

    std::vector<Cube> candidates;
    for (Cube& cube : all_cubes(problem.width))
        if (!contains_any(cube, problem.off) && contains_any(cube, problem.on))
            candidates.push_back(std::move(cube));
    std::sort(candidates.begin(), candidates.end(), textual_less);

    // A candidate whose covered on-minterms another candidate strictly
    // contains (or equals, keeping the textually first) can be swapped for
    // its dominator in any cover without growing it, so only the maximal
    // candidates need to be searched. The minimum count is unchanged.
    std::vector<std::vector<std::uint32_t>> sets(candidates.size());
    for (std::uint32_t c = 0; c < candidates.size(); ++c)
        for (std::size_t i = 0; i < problem.on.size(); ++i)
            if (candidates[c].contains(problem.on[i]))
                sets[c].push_back(static_cast<std::uint32_t>(i));
    std::vector<Cube> kept;
    std::vector<std::vector<std::uint32_t>> kept_sets;
    for (std::uint32_t c = 0; c < candidates.size(); ++c) {
        bool dominated = false;
        for (std::uint32_t d = 0; d < candidates.size() && !dominated; ++d) {
            if (d == c) continue;
            if (sets[d].size() > sets[c].size())
                dominated = std::includes(sets[d].begin(), sets[d].end(), sets[c].begin(),
                                          sets[c].end());
            else if (d < c && sets[d] == sets[c])
                dominated = true;
        }
        if (!dominated) {
            kept.push_back(candidates[c]);
            kept_sets.push_back(std::move(sets[c]));
        }
    }

    std::vector<std::vector<std::uint32_t>> coverers(problem.on.size());
    std::size_t max_gain = 0;
    for (std::uint32_t c = 0; c < kept.size(); ++c) {
        max_gain = std::max(max_gain, kept_sets[c].size());
        for (std::uint32_t i : kept_sets[c]) coverers[i].push_back(c);
    }
    for (const auto& list : coverers)
        if (list.empty()) throw DataError("on minterm admits no off-disjoint cube");

    for (std::uint32_t k = 1;; ++k) {
        std::vector<std::uint32_t> cover_count(problem.on.size(), 0);
        std::vector<std::uint32_t> chosen;
        if (cover_search(kept, coverers, problem.on, cover_count, problem.on.size(), max_gain,
                         k, chosen)) {
            std::vector<Cube> witness;
            for (std::uint32_t c : chosen) witness.push_back(kept[c]);
            return {chosen.size(), Cover(problem.width, std::move(witness))};
        }
    }
}

Cover oracle_primes(const Problem& problem) {
    check_oracle_width(problem.width);
    std::vector<Cube> primes;
    for (Cube& cube : all_cubes(problem.width)) {
        if (contains_any(cube, problem.off) || !contains_any(cube, problem.on)) continue;
        bool maximal = true;
        for (std::uint32_t pos = 0; pos < problem.width && maximal; ++pos) {
            if (cube.is_free(pos)) continue;
            if (!contains_any(cube.with_free(pos), problem.off)) maximal = false;
        }
        if (maximal) primes.push_back(std::move(cube));
    }
    return Cover(problem.width, std::move(primes));
}

Problem random_instance(std::uint32_t width, double on_fraction, double off_fraction,
                        std::uint64_t seed) {
    if (width == 0 || width > 24) throw DataError("random instance width must be 1..24");
    if (on_fraction < 0.0 || off_fraction < 0.0 || on_fraction + off_fraction > 1.0)
        throw DataError("fractions must be non-negative and sum to at most 1");
    std::vector<Bits> on, off;
    const std::uint64_t space = 1ULL << width;
    for (std::uint64_t value = 0; value < space; ++value) {
        const double u = SplitMix64::stream(seed, value).unit();
        if (u < on_fraction) on.push_back(Bits::from_value(width, value));
        else if (u < on_fraction + off_fraction) off.push_back(Bits::from_value(width, value));
    }
    return Problem{width, std::move(on), std::move(off)};
}

}  // namespace bfmin
