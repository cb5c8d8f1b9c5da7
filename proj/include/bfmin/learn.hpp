#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bfmin/binarize.hpp"
#include "bfmin/cube.hpp"
#include "bfmin/exact.hpp"
#include "bfmin/problem.hpp"

namespace bfmin {

enum class Engine { exact, heuristic };
Engine parse_engine(std::string_view name);
std::string engine_name(Engine engine);

// How observations of the same bit pattern with both labels resolve.
struct ConflictPolicy {
    enum class Kind { error, majority, threshold, prefer_positive };
    Kind kind = Kind::majority;
    double fraction = 0.5;  // threshold only, in (0,1]

    // "error", "majority", "prefer-positive", or "threshold:F".
    static ConflictPolicy parse(std::string_view text);
    std::string to_string() const;
};

struct LabeledBits {
    Bits bits;
    int label = 0;
    std::uint64_t multiplicity = 1;
};

// Distinct patterns resolve to on (class 1), off (class 0), or neither
// (don't-care) per the policy; unobserved patterns are implicitly
// don't-care. Majority ties go to don't-care.
Problem build_sets(std::uint32_t width, std::span<const LabeledBits> rows,
                   const ConflictPolicy& policy);

struct FitConfig {
    BinarizeConfig binarize;
    ConflictPolicy policy;
    Engine engine = Engine::heuristic;
    ExactLimits limits;
};

// The deployable classifier: class-1 cover over the schema's bit space,
// default class 0.
struct RuleSet {
    Schema schema;
    Cover cover;
    Engine engine = Engine::heuristic;
    std::uint64_t rows0 = 0;  // training rows per class
    std::uint64_t rows1 = 0;
};

// RuleSet plus the training care sets; this is what model files persist
// (merging and streaming need the on/off minterms, not just the cover).
struct Model {
    RuleSet rules;
    std::vector<Bits> on;
    std::vector<Bits> off;
};

Model fit_model(const RawTable& table, const FitConfig& config);
RuleSet fit(const RawTable& table, const FitConfig& config);

// Splits the table's rows into `parts` contiguous blocks under one shared
// schema, fits each block, then merges.
Model fit_parts(const RawTable& table, const FitConfig& config, std::uint32_t parts);

int predict_bits(const RuleSet& rules, const Bits& bits);
// values in schema feature order.
int predict(const RuleSet& rules, std::span<const std::string> values);
std::vector<int> predict_table(const RuleSet& rules, const RawTable& table);

struct Metrics {
    std::uint64_t tp = 0, tn = 0, fp = 0, fn = 0;
    double accuracy() const;
    double precision() const;  // 1.0 when no positive predictions exist
    double recall() const;     // 1.0 when no positive labels exist
};

Metrics evaluate(const RuleSet& rules, const RawTable& table);

// Rule-text name of every bit position: binary features read by column
// name, all other bits by 1-based position ("b_4" = bit_offset 3).
std::vector<std::string> bit_names(const Schema& schema);

// One line per cube, largest cube first: "IF f1=1 AND b_4=0 THEN class 1".
// Binary features appear by name; other bits by their b_<index> position
// name. Empty cover renders as "always class 0".
std::vector<std::string> rules_to_text(const RuleSet& rules);
// Inverse of rules_to_text; round-trips the cover exactly.
Cover parse_rules_text(const Schema& schema, std::span<const std::string> lines);

// One part of a partitioned fit: its cover and its deduplicated care sets.
struct PartSummary {
    Cover cover;
    std::vector<Bits> on;
    std::vector<Bits> off;
};

// Global problem = policy-resolved union of the parts' care sets. The
// heuristic engine warm-starts from the part covers repaired against the
// global off-set; exact refits from scratch.
Model merge_fit(const Schema& schema, std::span<const PartSummary> parts, Engine engine,
                const ConflictPolicy& policy, const ExactLimits& limits = {});

// Streaming update: the previous cover is committed on-side (cubes are
// repaired around new off minterms, then re-minimized); new rows join per
// policy, newer observations winning over older conflicting ones.
Model update(const Model& previous, std::span<const LabeledBits> new_rows, Engine engine,
             const ConflictPolicy& policy, const ExactLimits& limits = {});

// Sectioned text: #schema, #cover (cube strings), #meta (key=value),
// #on / #off (minterm strings). Round-trips byte-exactly.
std::string model_to_text(const Model& model);
Model model_from_text(std::string_view text);

}  // namespace bfmin
