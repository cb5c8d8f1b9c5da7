#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bfmin/bits.hpp"

namespace bfmin {

// Delimited text table: first row is the header, every row has one cell
// per header column. Cells are kept as text until encoding decides what
// they mean.
struct RawTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    std::size_t column_index(std::string_view name) const;  // throws DataError if absent
};

RawTable parse_delimited(std::string_view text, char delimiter = ',');
std::string format_delimited(const RawTable& table, char delimiter = ',');
RawTable read_delimited_file(const std::string& path, char delimiter = ',');

enum class FeatureKind { binary, categorical, numeric };
enum class Encoding { level_binary, one_hot };

struct FeatureSpec {
    std::string name;
    FeatureKind kind = FeatureKind::binary;
    Encoding encoding = Encoding::level_binary;
    std::uint32_t bit_offset = 0;
    std::uint32_t bit_width = 1;
    std::vector<double> cuts;               // numeric: strictly ascending thresholds
    std::vector<std::string> categories;    // categorical: sorted category values

    // Distinct level/category count this feature can take.
    std::uint32_t levels() const;
};

struct Schema {
    std::vector<FeatureSpec> features;
    std::uint32_t total_width = 0;
    std::string label_column;
};

struct BinarizeConfig {
    std::uint32_t levels = 16;                   // max levels per numeric feature
    Encoding encoding = Encoding::level_binary;  // applies to numeric and categorical
    std::string label_column = "label";
    bool equal_width = false;                    // default is equal-frequency cuts
    bool missing_category = false;               // map empty categorical cells to their own category
};

// Builds a schema over every non-label column. Numeric cuts come from the
// data: quantile (equal-frequency) by default, equal-width on request.
Schema infer_schema(const RawTable& table, const BinarizeConfig& config);

// Level = number of cuts ≤ value; total on reals, so out-of-range inputs
// clamp to the end levels for free.
std::uint32_t discretize(double value, std::span<const double> cuts);

// Equal-frequency thresholds via linear interpolation between order
// statistics (the k/levels quantiles for k = 1..levels-1), deduplicated.
std::vector<double> quantile_cuts(std::vector<double> values, std::uint32_t levels);
std::vector<double> equal_width_cuts(double lo, double hi, std::uint32_t levels);

Bits encode_integer(std::uint64_t level, std::uint32_t width);
Bits one_hot(std::uint32_t index, std::uint32_t cardinality);

// values must be in schema feature order.
Bits encode_values(const Schema& schema, std::span<const std::string> values);

struct EncodedTable {
    std::vector<Bits> bits;   // one per table row
    std::vector<int> labels;  // empty when the table has no label column
};

// Columns are matched by name, so table column order need not match the
// schema. require_label makes a missing label column an error.
EncodedTable encode_table(const Schema& schema, const RawTable& table, bool require_label);

std::string describe_bit(const Schema& schema, std::uint32_t position);

// One feature per line: name, kind, encoding, bit_offset, bit_width,
// params (tab-separated); preceded by a "#label <name>" line. Numbers
// print in shortest round-trip form, so write/parse is bit-exact.
std::string schema_to_text(const Schema& schema);
Schema schema_from_text(std::string_view text);

double parse_double(std::string_view token);  // whole-token, throws DataError
std::string format_double(double value);      // shortest round-trip form

}  // namespace bfmin
