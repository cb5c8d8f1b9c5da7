#include "bfmin/exact.hpp"

#include <algorithm>
#include <bit>

#include "bfmin/error.hpp"

namespace bfmin {

namespace {

bool subset_of(const Bits& a, const Bits& b) {
    for (std::uint32_t i = 0; i < a.word_count(); ++i)
        if (a.word(i) & ~b.word(i)) return false;
    return true;
}

Bits xor_bits(const Bits& a, const Bits& b) {
    Bits d(a.width());
    for (std::uint32_t i = 0; i < d.word_count(); ++i) d.set_word(i, a.word(i) ^ b.word(i));
    return d;
}

template <typename Fn>
void for_each_set_bit(const Bits& b, Fn&& fn) {
    for (std::uint32_t i = 0; i < b.word_count(); ++i) {
        std::uint64_t w = b.word(i);
        while (w) {
            fn(64 * i + static_cast<std::uint32_t>(std::countr_zero(w)));
            w &= w - 1;
        }
    }
}

// Extracts the minimal sets of the family. A set's proper subsets are
// numerically smaller, so repeatedly taking the uncovered minimum and
// purging its supersets yields exactly the minimal family, in ascending
// value order.
std::vector<Bits> minimal_edges(std::vector<Bits> pool) {
    std::vector<Bits> kept;
    while (!pool.empty()) {
        const auto best = std::min_element(pool.begin(), pool.end(), value_less);
        kept.push_back(*best);
        const Bits& k = kept.back();
        std::erase_if(pool, [&](const Bits& d) { return subset_of(k, d); });
    }
    return kept;
}

// Enumerates the minimal transversals of `edges` (MMCS-style search:
// branch on an uncovered edge's vertices, exclusion sets prevent
// duplicates, the per-vertex criticality test prunes non-minimal
// branches). Each transversal is reported as the set of positions kept
// as literals; the complement is the prime's free set.
class TransversalSearch {
public:
    TransversalSearch(std::uint32_t width, const std::vector<Bits>& edges)
        : edges_(edges), chosen_(width), excluded_(width), hits_(edges.size(), 0) {}

    template <typename Emit>
    void run(Emit&& emit) {
        search(emit);
    }

private:
    const std::vector<Bits>& edges_;
    Bits chosen_;
    Bits excluded_;
    std::vector<std::uint32_t> hits_;
    std::size_t covered_ = 0;

    bool intersects(const Bits& e, const Bits& s) const {
        for (std::uint32_t i = 0; i < e.word_count(); ++i)
            if (e.word(i) & s.word(i)) return true;
        return false;
    }

    // Every already-chosen vertex must keep an edge it alone hits once v
    // joins; otherwise no minimal transversal lies below this branch.
    bool keeps_all_critical(std::uint32_t v) const {
        bool ok = true;
        for_each_set_bit(chosen_, [&](std::uint32_t u) {
            if (!ok) return;
            bool has_crit = false;
            for (std::size_t e = 0; e < edges_.size(); ++e)
                if (hits_[e] == 1 && edges_[e].get(u) && !edges_[e].get(v)) {
                    has_crit = true;
                    break;
                }
            ok = has_crit;
        });
        return ok;
    }

    template <typename Emit>
    void search(Emit& emit) {
        if (covered_ == edges_.size()) {
            emit(chosen_);
            return;
        }
        std::size_t target = 0;
        while (hits_[target] != 0) ++target;

        std::vector<std::uint32_t> branch_vertices;
        for_each_set_bit(edges_[target], [&](std::uint32_t v) {
            if (!excluded_.get(v)) branch_vertices.push_back(v);
        });

        for (std::uint32_t v : branch_vertices) {
            if (keeps_all_critical(v)) {
                chosen_.set(v, true);
                for (std::size_t e = 0; e < edges_.size(); ++e)
                    if (edges_[e].get(v) && hits_[e]++ == 0) ++covered_;
                search(emit);
                for (std::size_t e = 0; e < edges_.size(); ++e)
                    if (edges_[e].get(v) && --hits_[e] == 0) --covered_;
                chosen_.set(v, false);
            }
            excluded_.set(v, true);
        }
        for (std::uint32_t v : branch_vertices) excluded_.set(v, false);
    }
};

}  // namespace

Cover prime_implicants(const Problem& problem, const ExactLimits& limits) {
    std::vector<Cube> primes;
    std::uint64_t generated = 0;
    std::vector<Bits> pool;
    for (const Bits& m : problem.on) {
        pool.clear();
        pool.reserve(problem.off.size());
        for (const Bits& r : problem.off) pool.push_back(xor_bits(r, m));
        const std::vector<Bits> edges = minimal_edges(std::move(pool));
        pool = {};

        TransversalSearch search(problem.width, edges);
        search.run([&](const Bits& kept_positions) {
            if (++generated > limits.max_primes)
                throw IntractableError(IntractableError::Limit::primes, limits.max_primes);
            Bits value(problem.width);
            for (std::uint32_t i = 0; i < value.word_count(); ++i)
                value.set_word(i, m.word(i) & kept_positions.word(i));
            primes.emplace_back(kept_positions, std::move(value));
        });
    }
    return Cover(problem.width, std::move(primes));
}

Cover essential_primes(const Cover& primes, std::span<const Bits> on) {
    std::vector<char> essential(primes.size(), 0);
    for (const Bits& m : on) {
        std::size_t count = 0, last = 0;
        for (std::size_t j = 0; j < primes.size(); ++j) {
            if (primes.cubes()[j].contains(m)) {
                ++count;
                last = j;
                if (count > 1) break;
            }
        }
        if (count == 0)
            throw DataError("on minterm " + m.to_string() + " not covered by any prime");
        if (count == 1) essential[last] = 1;
    }
    std::vector<Cube> out;
    for (std::size_t j = 0; j < primes.size(); ++j)
        if (essential[j]) out.push_back(primes.cubes()[j]);
    return Cover(primes.width(), std::move(out));
}

namespace {

struct CoverSearch {
    const std::vector<std::vector<std::uint32_t>>& row_cols;
    const std::vector<std::vector<std::uint32_t>>& col_rows;
    const std::vector<std::uint32_t>& col_lits;
    std::uint64_t max_nodes;
    std::uint64_t nodes = 0;
    std::uint64_t best_count = ~0ULL;
    std::uint64_t best_lits = ~0ULL;
    std::vector<std::uint32_t> best;

    std::vector<std::uint32_t> alive_cols_of(const std::vector<std::uint32_t>& cols,
                                             const std::vector<char>& col_alive) const {
        std::vector<std::uint32_t> out;
        for (std::uint32_t c : cols)
            if (col_alive[c]) out.push_back(c);
        return out;
    }

    std::vector<std::uint32_t> alive_rows_of(const std::vector<std::uint32_t>& rows,
                                             const std::vector<char>& row_alive) const {
        std::vector<std::uint32_t> out;
        for (std::uint32_t r : rows)
            if (row_alive[r]) out.push_back(r);
        return out;
    }

    void take(std::uint32_t col, std::vector<char>& row_alive, std::vector<char>& col_alive,
              std::vector<std::uint32_t>& chosen, std::uint64_t& lits) const {
        chosen.push_back(col);
        lits += col_lits[col];
        col_alive[col] = 0;
        for (std::uint32_t r : col_rows[col]) row_alive[r] = 0;
    }

    void search(std::vector<char> row_alive, std::vector<char> col_alive,
                std::vector<std::uint32_t> chosen, std::uint64_t lits) {
        bool changed = true;
        while (changed) {
            if (++nodes > max_nodes)
                throw IntractableError(IntractableError::Limit::nodes, max_nodes);
            changed = false;

            // Reduction 1: essential columns.
            for (std::size_t r = 0; r < row_cols.size(); ++r) {
                if (!row_alive[r]) continue;
                const auto cols = alive_cols_of(row_cols[r], col_alive);
                if (cols.empty()) return;  // infeasible branch (exclusions)
                if (cols.size() == 1) {
                    take(cols[0], row_alive, col_alive, chosen, lits);
                    changed = true;
                }
            }
            if (changed) continue;

            if (std::none_of(row_alive.begin(), row_alive.end(), [](char a) { return a; })) {
                const std::uint64_t count = chosen.size();
                if (count < best_count || (count == best_count && lits < best_lits)) {
                    best_count = count;
                    best_lits = lits;
                    best = chosen;
                }
                return;
            }

            // Reduction 2: drop rows whose column set is a superset of
            // another row's (covering the harder row covers them too).
            std::vector<std::vector<std::uint32_t>> rcols(row_cols.size());
            std::vector<std::uint32_t> rows;
            for (std::size_t r = 0; r < row_cols.size(); ++r)
                if (row_alive[r]) {
                    rcols[r] = alive_cols_of(row_cols[r], col_alive);
                    rows.push_back(static_cast<std::uint32_t>(r));
                }
            for (std::uint32_t i : rows) {
                if (!row_alive[i]) continue;
                for (std::uint32_t j : rows) {
                    if (i == j || !row_alive[j] || !row_alive[i]) continue;
                    if (rcols[i].size() <= rcols[j].size() &&
                        std::includes(rcols[j].begin(), rcols[j].end(), rcols[i].begin(),
                                      rcols[i].end())) {
                        row_alive[j] = 0;
                        changed = true;
                    }
                }
            }
            if (changed) continue;

            // Reduction 3: drop dominated columns (covered rows a subset of
            // another column's, no better literal count; ties keep the
            // lower index).
            std::vector<std::uint32_t> cols;
            std::vector<std::vector<std::uint32_t>> crows(col_rows.size());
            for (std::size_t c = 0; c < col_rows.size(); ++c)
                if (col_alive[c]) {
                    crows[c] = alive_rows_of(col_rows[c], row_alive);
                    if (crows[c].empty()) {
                        col_alive[c] = 0;
                        changed = true;
                        continue;
                    }
                    cols.push_back(static_cast<std::uint32_t>(c));
                }
            if (changed) continue;
            for (std::uint32_t c : cols) {
                if (!col_alive[c]) continue;
                for (std::uint32_t d : cols) {
                    if (c == d || !col_alive[d] || !col_alive[c]) continue;
                    if (crows[c].size() > crows[d].size()) continue;
                    const bool same = crows[c].size() == crows[d].size();
                    if (same && (col_lits[d] > col_lits[c] ||
                                 (col_lits[d] == col_lits[c] && d > c)))
                        continue;  // the mirrored pass removes d instead
                    if (!same && col_lits[d] > col_lits[c]) continue;
                    if (std::includes(crows[d].begin(), crows[d].end(), crows[c].begin(),
                                      crows[c].end())) {
                        col_alive[c] = 0;
                        changed = true;
                        break;
                    }
                }
            }
            if (changed) continue;

            // Lower bound: rows sharing no columns need one cube each.
            std::vector<std::uint32_t> order;
            for (std::uint32_t r : rows)
                if (row_alive[r]) order.push_back(r);
            std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
                return rcols[a].size() != rcols[b].size() ? rcols[a].size() < rcols[b].size()
                                                          : a < b;
            });
            std::vector<char> used(col_rows.size(), 0);
            std::uint64_t bound = 0;
            for (std::uint32_t r : order) {
                bool disjoint = true;
                for (std::uint32_t c : rcols[r])
                    if (used[c]) {
                        disjoint = false;
                        break;
                    }
                if (!disjoint) continue;
                ++bound;
                for (std::uint32_t c : rcols[r]) used[c] = 1;
            }
            if (chosen.size() + bound > best_count) return;
            if (chosen.size() + bound == best_count) {
                // Equal cube count can only win on literals; every added
                // column costs at least the cheapest alive column.
                std::uint64_t min_lit = ~0ULL;
                for (std::size_t c = 0; c < col_rows.size(); ++c)
                    if (col_alive[c]) min_lit = std::min<std::uint64_t>(min_lit, col_lits[c]);
                if (lits + bound * min_lit >= best_lits) return;
            }

            // Branch on the tightest row, best column first (most rows
            // covered, then fewest literals); trying a column excludes it
            // from later siblings so subtrees partition the search space.
            const std::uint32_t pick = order.front();
            std::vector<std::uint32_t> branch = rcols[pick];
            std::sort(branch.begin(), branch.end(), [&](std::uint32_t a, std::uint32_t b) {
                if (crows[a].size() != crows[b].size()) return crows[a].size() > crows[b].size();
                if (col_lits[a] != col_lits[b]) return col_lits[a] < col_lits[b];
                return a < b;
            });
            for (std::uint32_t c : branch) {
                auto ra = row_alive;
                auto ca = col_alive;
                auto ch = chosen;
                auto lt = lits;
                take(c, ra, ca, ch, lt);
                search(std::move(ra), std::move(ca), std::move(ch), lt);
                col_alive[c] = 0;  // exclusion for later siblings
            }
            return;
        }
    }
};

}  // namespace

Cover unate_cover(const Cover& primes, std::span<const Bits> on, const ExactLimits& limits) {
    if (on.empty()) return Cover(primes.width());

    std::vector<std::vector<std::uint32_t>> row_cols(on.size());
    std::vector<std::vector<std::uint32_t>> col_rows(primes.size());
    for (std::size_t j = 0; j < primes.size(); ++j)
        for (std::size_t i = 0; i < on.size(); ++i)
            if (primes.cubes()[j].contains(on[i])) {
                row_cols[i].push_back(static_cast<std::uint32_t>(j));
                col_rows[j].push_back(static_cast<std::uint32_t>(i));
            }
    for (std::size_t i = 0; i < on.size(); ++i)
        if (row_cols[i].empty())
            throw DataError("on minterm " + on[i].to_string() + " not covered by any prime");

    std::vector<std::uint32_t> col_lits(primes.size());
    for (std::size_t j = 0; j < primes.size(); ++j)
        col_lits[j] = primes.cubes()[j].literal_count();

    // Seed the incumbent with a greedy cover (most uncovered rows first,
    // then fewer literals, then lower index) so pruning bites from the
    // first descent. The search keeps it unless strictly better exists.
    std::vector<std::uint32_t> greedy;
    std::uint64_t greedy_lits = 0;
    {
        std::vector<char> covered(on.size(), 0);
        std::size_t remaining = on.size();
        while (remaining > 0) {
            std::size_t best_gain = 0;
            std::uint32_t best_col = 0;
            for (std::uint32_t j = 0; j < col_rows.size(); ++j) {
                std::size_t gain = 0;
                for (std::uint32_t i : col_rows[j])
                    if (!covered[i]) ++gain;
                if (gain > best_gain ||
                    (gain == best_gain && gain > 0 && col_lits[j] < col_lits[best_col])) {
                    best_gain = gain;
                    best_col = j;
                }
            }
            greedy.push_back(best_col);
            greedy_lits += col_lits[best_col];
            for (std::uint32_t i : col_rows[best_col])
                if (!covered[i]) {
                    covered[i] = 1;
                    --remaining;
                }
        }
    }

    CoverSearch bnb{row_cols, col_rows, col_lits, limits.max_nodes,
                    0,        greedy.size(), greedy_lits, greedy};
    bnb.search(std::vector<char>(on.size(), 1), std::vector<char>(primes.size(), 1), {}, 0);

    std::vector<Cube> chosen;
    for (std::uint32_t j : bnb.best) chosen.push_back(primes.cubes()[j]);
    return Cover(primes.width(), std::move(chosen));
}

Cover minimize_exact(const Problem& problem, const ExactLimits& limits) {
    if (problem.on.empty()) return Cover(problem.width);
    const Cover primes = prime_implicants(problem, limits);
    return unate_cover(primes, problem.on, limits);
}

}  // namespace bfmin
