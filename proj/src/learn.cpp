#include "bfmin/learn.hpp"

#include <algorithm>
#include <map>

#include "bfmin/error.hpp"
#include "bfmin/espresso.hpp"
#include "bfmin/kernels.hpp"

namespace bfmin {

Engine parse_engine(std::string_view name) {
    if (name == "exact") return Engine::exact;
    if (name == "heuristic") return Engine::heuristic;
    throw DataError("unknown engine '" + std::string(name) + "' (use exact or heuristic)");
}

std::string engine_name(Engine engine) {
    return engine == Engine::exact ? "exact" : "heuristic";
}

ConflictPolicy ConflictPolicy::parse(std::string_view text) {
    if (text == "error") return {Kind::error};
    if (text == "majority") return {Kind::majority};
    if (text == "prefer-positive") return {Kind::prefer_positive};
    if (text.starts_with("threshold:")) {
        const double f = parse_double(text.substr(10));
        if (!(f > 0.0 && f <= 1.0)) throw DataError("threshold fraction must be in (0,1]");
        return {Kind::threshold, f};
    }
    throw DataError("unknown policy '" + std::string(text) +
                    "' (use error, majority, threshold:F, or prefer-positive)");
}

std::string ConflictPolicy::to_string() const {
    switch (kind) {
        case Kind::error: return "error";
        case Kind::majority: return "majority";
        case Kind::prefer_positive: return "prefer-positive";
        case Kind::threshold: return "threshold:" + format_double(fraction);
    }
    return "";
}

Problem build_sets(std::uint32_t width, std::span<const LabeledBits> rows,
                   const ConflictPolicy& policy) {
    struct Tally {
        std::uint64_t zeros = 0, ones = 0;
    };
    std::map<Bits, Tally, decltype(&value_less)> tally(&value_less);
    for (const LabeledBits& row : rows) {
        if (row.bits.width() != width) throw DataError("labeled row width mismatch");
        Tally& t = tally[row.bits];
        (row.label == 1 ? t.ones : t.zeros) += row.multiplicity;
    }

    std::vector<Bits> on, off;
    for (const auto& [bits, t] : tally) {
        bool to_on = false, to_off = false;
        switch (policy.kind) {
            case ConflictPolicy::Kind::error:
                if (t.ones > 0 && t.zeros > 0)
                    throw DataError("pattern " + bits.to_string() +
                                    " observed with both labels under policy=error");
                to_on = t.ones > 0;
                to_off = t.zeros > 0;
                break;
            case ConflictPolicy::Kind::majority:
                to_on = t.ones > t.zeros;
                to_off = t.zeros > t.ones;  // tie: don't-care
                break;
            case ConflictPolicy::Kind::threshold: {
                const double frac =
                    static_cast<double>(t.ones) / static_cast<double>(t.ones + t.zeros);
                to_on = frac >= policy.fraction;
                to_off = !to_on;
                break;
            }
            case ConflictPolicy::Kind::prefer_positive:
                to_on = t.ones > 0;
                to_off = !to_on;
                break;
        }
        if (to_on) on.push_back(bits);
        else if (to_off) off.push_back(bits);
    }
    // The map iterates in ascending value order, so both sets arrive sorted.
    return Problem{width, std::move(on), std::move(off)};
}

namespace {

Cover run_engine(const Problem& problem, Engine engine, const ExactLimits& limits) {
    return engine == Engine::exact ? minimize_exact(problem, limits)
                                   : minimize_heuristic(problem);
}

std::vector<LabeledBits> to_labeled(const EncodedTable& encoded) {
    std::vector<LabeledBits> rows;
    rows.reserve(encoded.bits.size());
    for (std::size_t i = 0; i < encoded.bits.size(); ++i)
        rows.push_back({encoded.bits[i], encoded.labels[i], 1});
    return rows;
}

}  // namespace

Model fit_model(const RawTable& table, const FitConfig& config) {
    const Schema schema = infer_schema(table, config.binarize);
    const EncodedTable encoded = encode_table(schema, table, true);
    const auto rows = to_labeled(encoded);
    Problem problem = build_sets(schema.total_width, rows, config.policy);
    Cover cover = run_engine(problem, config.engine, config.limits);

    RuleSet rules{schema, std::move(cover), config.engine, 0, 0};
    for (int label : encoded.labels) (label == 1 ? rules.rows1 : rules.rows0) += 1;
    return Model{std::move(rules), std::move(problem.on), std::move(problem.off)};
}

RuleSet fit(const RawTable& table, const FitConfig& config) {
    return fit_model(table, config).rules;
}

Model fit_parts(const RawTable& table, const FitConfig& config, std::uint32_t parts) {
    if (parts == 0) throw DataError("parts must be positive");
    const Schema schema = infer_schema(table, config.binarize);
    const EncodedTable encoded = encode_table(schema, table, true);
    const auto rows = to_labeled(encoded);

    std::vector<PartSummary> summaries;
    const std::size_t n = rows.size();
    for (std::uint32_t p = 0; p < parts; ++p) {
        const std::size_t lo = n * p / parts, hi = n * (p + 1) / parts;
        Problem part = build_sets(schema.total_width,
                                  std::span(rows).subspan(lo, hi - lo), config.policy);
        Cover cover = run_engine(part, config.engine, config.limits);
        summaries.push_back({std::move(cover), std::move(part.on), std::move(part.off)});
    }

    Model merged = merge_fit(schema, summaries, config.engine, config.policy, config.limits);
    merged.rules.rows0 = merged.rules.rows1 = 0;
    for (int label : encoded.labels)
        (label == 1 ? merged.rules.rows1 : merged.rules.rows0) += 1;
    return merged;
}

int predict_bits(const RuleSet& rules, const Bits& bits) {
    return rules.cover.eval(bits) ? 1 : 0;
}

int predict(const RuleSet& rules, std::span<const std::string> values) {
    return predict_bits(rules, encode_values(rules.schema, values));
}

std::vector<int> predict_table(const RuleSet& rules, const RawTable& table) {
    const EncodedTable encoded = encode_table(rules.schema, table, false);
    const auto outputs = kernels::eval_many(rules.cover, encoded.bits);
    return std::vector<int>(outputs.begin(), outputs.end());
}

double Metrics::accuracy() const {
    const std::uint64_t total = tp + tn + fp + fn;
    return total == 0 ? 1.0 : static_cast<double>(tp + tn) / static_cast<double>(total);
}

double Metrics::precision() const {
    return tp + fp == 0 ? 1.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
}

double Metrics::recall() const {
    return tp + fn == 0 ? 1.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
}

Metrics evaluate(const RuleSet& rules, const RawTable& table) {
    const EncodedTable encoded = encode_table(rules.schema, table, true);
    const auto outputs = kernels::eval_many(rules.cover, encoded.bits);
    Metrics m;
    for (std::size_t i = 0; i < outputs.size(); ++i) {
        const bool predicted = outputs[i] != 0;
        const bool actual = encoded.labels[i] == 1;
        if (predicted && actual) ++m.tp;
        else if (predicted && !actual) ++m.fp;
        else if (!predicted && actual) ++m.fn;
        else ++m.tn;
    }
    return m;
}

std::vector<std::string> bit_names(const Schema& schema) {
    std::vector<std::string> names(schema.total_width);
    for (std::uint32_t pos = 0; pos < schema.total_width; ++pos)
        names[pos] = "b_" + std::to_string(pos + 1);
    for (const FeatureSpec& spec : schema.features)
        if (spec.kind == FeatureKind::binary) names[spec.bit_offset] = spec.name;
    return names;
}

std::vector<std::string> rules_to_text(const RuleSet& rules) {
    if (rules.cover.empty()) return {"always class 0"};
    const auto names = bit_names(rules.schema);

    std::vector<Cube> cubes(rules.cover.cubes());
    std::sort(cubes.begin(), cubes.end(), [](const Cube& a, const Cube& b) {
        if (a.free_count() != b.free_count()) return a.free_count() > b.free_count();
        return textual_less(a, b);
    });

    std::vector<std::string> lines;
    for (const Cube& cube : cubes) {
        std::string conds;
        for (std::uint32_t pos = 0; pos < cube.width(); ++pos) {
            if (cube.is_free(pos)) continue;
            if (!conds.empty()) conds += " AND ";
            conds += names[pos] + "=" + (cube.literal(pos) ? "1" : "0");
        }
        if (conds.empty()) conds = "TRUE";
        lines.push_back("IF " + conds + " THEN class 1");
    }
    return lines;
}

Cover parse_rules_text(const Schema& schema, std::span<const std::string> lines) {
    if (lines.size() == 1 && lines[0] == "always class 0") return Cover(schema.total_width);

    std::map<std::string, std::uint32_t> position_of;
    const auto names = bit_names(schema);
    for (std::uint32_t pos = 0; pos < schema.total_width; ++pos) position_of[names[pos]] = pos;

    std::vector<Cube> cubes;
    for (const std::string& line : lines) {
        constexpr std::string_view prefix = "IF ", suffix = " THEN class 1";
        if (!line.starts_with(prefix) || !line.ends_with(suffix))
            throw DataError("malformed rule line '" + line + "'");
        std::string_view body(line);
        body.remove_prefix(prefix.size());
        body.remove_suffix(suffix.size());

        Cube cube = Cube::top(schema.total_width);
        if (body != "TRUE") {
            std::size_t start = 0;
            while (start <= body.size()) {
                std::size_t end = body.find(" AND ", start);
                if (end == std::string_view::npos) end = body.size();
                const std::string_view cond = body.substr(start, end - start);
                start = end + 5;
                const std::size_t eq = cond.rfind('=');
                if (eq == std::string_view::npos || eq + 2 != cond.size() ||
                    (cond.back() != '0' && cond.back() != '1'))
                    throw DataError("malformed condition '" + std::string(cond) + "'");
                const auto it = position_of.find(std::string(cond.substr(0, eq)));
                if (it == position_of.end())
                    throw DataError("unknown bit name in condition '" + std::string(cond) + "'");
                if (!cube.is_free(it->second))
                    throw DataError("duplicate condition on '" + it->first + "'");
                cube = cube.with_fixed(it->second, cond.back() == '1');
                if (end == body.size()) break;
            }
        }
        cubes.push_back(std::move(cube));
    }
    return Cover(schema.total_width, std::move(cubes));
}

namespace {

std::vector<Bits> sorted_union(std::vector<Bits> a, const std::vector<Bits>& b) {
    a.insert(a.end(), b.begin(), b.end());
    sort_unique_minterms(a);
    return a;
}

std::vector<Bits> sorted_minus(const std::vector<Bits>& a, const std::vector<Bits>& b) {
    std::vector<Bits> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out),
                        value_less);
    return out;
}

// Split the cube around the off minterms it contains.
std::vector<Cube> repair_cube(const Cube& cube, const std::vector<Bits>& off) {
    std::vector<Cube> blockers;
    for (const Bits& m : off)
        if (cube.contains(m)) blockers.push_back(Cube::minterm(m));
    return cube_difference(cube, blockers);
}

}  // namespace

Model merge_fit(const Schema& schema, std::span<const PartSummary> parts, Engine engine,
                const ConflictPolicy& policy, const ExactLimits& limits) {
    const std::uint32_t width = schema.total_width;
    std::vector<LabeledBits> rows;
    for (const PartSummary& part : parts) {
        if (part.cover.width() != width) throw DataError("part cover width mismatch");
        for (const Bits& m : part.on) rows.push_back({m, 1, 1});
        for (const Bits& m : part.off) rows.push_back({m, 0, 1});
    }
    Problem global = build_sets(width, rows, policy);

    Cover cover(width);
    if (engine == Engine::exact) {
        cover = minimize_exact(global, limits);
    } else {
        // Warm start: each part cover repaired against the global off-set,
        // plus any global on minterm the repaired cubes miss.
        std::vector<Cube> seed;
        for (const PartSummary& part : parts)
            for (const Cube& cube : part.cover.cubes()) {
                auto pieces = repair_cube(cube, global.off);
                seed.insert(seed.end(), pieces.begin(), pieces.end());
            }
        const Cover seed_cover(width, seed);
        for (const Bits& m : global.on)
            if (!seed_cover.eval(m)) seed.push_back(Cube::minterm(m));
        cover = minimize_heuristic_seeded(global, Cover(width, std::move(seed)));
    }

    RuleSet rules{schema, std::move(cover), engine,
                  static_cast<std::uint64_t>(global.off.size()),
                  static_cast<std::uint64_t>(global.on.size())};
    return Model{std::move(rules), std::move(global.on), std::move(global.off)};
}

Model update(const Model& previous, std::span<const LabeledBits> new_rows, Engine engine,
             const ConflictPolicy& policy, const ExactLimits& limits) {
    const std::uint32_t width = previous.rules.schema.total_width;
    const Problem fresh = build_sets(width, new_rows, policy);

    // The off-set only accumulates: new off minterms punch holes in the
    // committed cover, and a new on observation of a pattern already in
    // the off-set loses to it (its seed cube repairs away to nothing).
    const std::vector<Bits> off = sorted_union(previous.off, fresh.off);
    const std::vector<Bits> on = sorted_minus(sorted_union(previous.on, fresh.on), off);

    std::vector<Cube> seed;
    for (const Cube& cube : previous.rules.cover.cubes()) {
        auto pieces = repair_cube(cube, off);
        seed.insert(seed.end(), pieces.begin(), pieces.end());
    }
    for (const Bits& m : fresh.on)
        if (!std::binary_search(off.begin(), off.end(), m, value_less))
            seed.push_back(Cube::minterm(m));

    Cover cover(width);
    if (!seed.empty()) {
        if (engine == Engine::heuristic) {
            const Cover expanded = expand(Cover(width, seed), off);
            cover = region_irredundant(expanded, seed);
        } else {
            // The exact engine needs the committed regions as minterms.
            std::uint64_t total = 0;
            constexpr std::uint64_t expand_limit = 1ULL << 24;
            for (const Cube& s : seed) {
                total += s.minterm_count();
                if (total > expand_limit)
                    throw IntractableError(IntractableError::Limit::minterms, expand_limit);
            }
            std::vector<Bits> seed_on;
            for (const Cube& s : seed)
                for_each_minterm(s, [&](const Bits& m) { seed_on.push_back(m); });
            sort_unique_minterms(seed_on);
            cover = minimize_exact(Problem::make(width, std::move(seed_on), off), limits);
        }
    }

    RuleSet rules{previous.rules.schema, std::move(cover), engine, previous.rules.rows0,
                  previous.rules.rows1};
    for (const LabeledBits& row : new_rows)
        (row.label == 1 ? rules.rows1 : rules.rows0) += row.multiplicity;
    return Model{std::move(rules), on, off};
}

std::string model_to_text(const Model& model) {
    std::string out = "#schema\n" + schema_to_text(model.rules.schema) + "#cover\n";
    for (const Cube& cube : model.rules.cover.cubes()) out += cube.to_string() + "\n";
    out += "#meta\n";
    out += "engine=" + engine_name(model.rules.engine) + "\n";
    out += "rows0=" + std::to_string(model.rules.rows0) + "\n";
    out += "rows1=" + std::to_string(model.rules.rows1) + "\n";
    out += "#on\n";
    for (const Bits& m : model.on) out += m.to_string() + "\n";
    out += "#off\n";
    for (const Bits& m : model.off) out += m.to_string() + "\n";
    return out;
}

Model model_from_text(std::string_view text) {
    enum class Section { none, schema, cover, meta, on, off };
    Section section = Section::none;
    std::string schema_text;
    std::vector<std::string> cover_lines, meta_lines;
    std::vector<Bits> on, off;
    bool seen[5] = {};

    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty() && start > text.size()) break;

        if (line == "#schema") { section = Section::schema; seen[0] = true; continue; }
        if (line == "#cover") { section = Section::cover; seen[1] = true; continue; }
        if (line == "#meta") { section = Section::meta; seen[2] = true; continue; }
        if (line == "#on") { section = Section::on; seen[3] = true; continue; }
        if (line == "#off") { section = Section::off; seen[4] = true; continue; }

        switch (section) {
            case Section::none:
                throw DataError("model file must start with #schema");
            case Section::schema:
                schema_text += std::string(line) + "\n";
                break;
            case Section::cover:
                if (!line.empty()) cover_lines.emplace_back(line);
                break;
            case Section::meta:
                if (!line.empty()) meta_lines.emplace_back(line);
                break;
            case Section::on:
                if (!line.empty()) on.push_back(Bits::parse(line));
                break;
            case Section::off:
                if (!line.empty()) off.push_back(Bits::parse(line));
                break;
        }
    }
    for (bool s : seen)
        if (!s) throw DataError("model file is missing a section");

    Model model;
    model.rules.schema = schema_from_text(schema_text);
    const std::uint32_t width = model.rules.schema.total_width;

    std::vector<Cube> cubes;
    for (const std::string& line : cover_lines) {
        Cube cube = Cube::parse(line);
        if (cube.width() != width) throw DataError("cover cube width mismatch");
        cubes.push_back(std::move(cube));
    }
    model.rules.cover = Cover(width, std::move(cubes));

    bool have_engine = false, have_rows0 = false, have_rows1 = false;
    for (const std::string& line : meta_lines) {
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) throw DataError("malformed meta line '" + line + "'");
        const std::string key = line.substr(0, eq), value = line.substr(eq + 1);
        if (key == "engine") {
            model.rules.engine = parse_engine(value);
            have_engine = true;
        } else if (key == "rows0") {
            model.rules.rows0 = std::stoull(value);
            have_rows0 = true;
        } else if (key == "rows1") {
            model.rules.rows1 = std::stoull(value);
            have_rows1 = true;
        } else {
            throw DataError("unknown meta key '" + key + "'");
        }
    }
    if (!have_engine || !have_rows0 || !have_rows1)
        throw DataError("model meta section is incomplete");

    for (const Bits& m : on)
        if (m.width() != width) throw DataError("on minterm width mismatch");
    for (const Bits& m : off)
        if (m.width() != width) throw DataError("off minterm width mismatch");
    // Validates sortedness is restored and on/off stay disjoint.
    Problem problem = Problem::make(width, std::move(on), std::move(off));
    model.on = std::move(problem.on);
    model.off = std::move(problem.off);
    return model;
}

}  // namespace bfmin
