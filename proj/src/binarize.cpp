#include "bfmin/binarize.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "bfmin/error.hpp"

namespace bfmin {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string> split(std::string_view line, char delimiter) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(delimiter, start);
        if (pos == std::string_view::npos) {
            cells.emplace_back(trim(line.substr(start)));
            return cells;
        }
        cells.emplace_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
}

bool is_binary_cell(const std::string& s) { return s == "0" || s == "1"; }

bool parses_as_double(const std::string& s) {
    if (s.empty()) return false;
    double out;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

std::uint32_t ceil_log2(std::uint32_t n) {
    return n <= 2 ? 1 : static_cast<std::uint32_t>(std::bit_width(n - 1));
}

const char* kind_name(FeatureKind k) {
    switch (k) {
        case FeatureKind::binary: return "binary";
        case FeatureKind::categorical: return "categorical";
        case FeatureKind::numeric: return "numeric";
    }
    return "";
}

const char* encoding_name(Encoding e) {
    return e == Encoding::level_binary ? "level-binary" : "one-hot";
}

FeatureKind parse_kind(std::string_view s) {
    if (s == "binary") return FeatureKind::binary;
    if (s == "categorical") return FeatureKind::categorical;
    if (s == "numeric") return FeatureKind::numeric;
    throw DataError("unknown feature kind '" + std::string(s) + "'");
}

Encoding parse_encoding(std::string_view s) {
    if (s == "level-binary") return Encoding::level_binary;
    if (s == "one-hot") return Encoding::one_hot;
    throw DataError("unknown encoding '" + std::string(s) + "'");
}

}  // namespace

std::size_t RawTable::column_index(std::string_view name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return i;
    throw DataError("no column named '" + std::string(name) + "'");
}

RawTable parse_delimited(std::string_view text, char delimiter) {
    RawTable table;
    std::size_t start = 0;
    bool header_seen = false;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        const std::string_view line = text.substr(start, end - start);
        start = end + 1;
        if (trim(line).empty()) continue;
        auto cells = split(line, delimiter);
        if (!header_seen) {
            table.columns = std::move(cells);
            header_seen = true;
            continue;
        }
        if (cells.size() != table.columns.size())
            throw DataError("row " + std::to_string(table.rows.size() + 1) + " has " +
                            std::to_string(cells.size()) + " cells, header has " +
                            std::to_string(table.columns.size()));
        table.rows.push_back(std::move(cells));
    }
    if (!header_seen) throw DataError("empty table: no header row");
    return table;
}

std::string format_delimited(const RawTable& table, char delimiter) {
    std::string out;
    auto emit_row = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += delimiter;
            out += cells[i];
        }
        out += '\n';
    };
    emit_row(table.columns);
    for (const auto& row : table.rows) emit_row(row);
    return out;
}

RawTable read_delimited_file(const std::string& path, char delimiter) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_delimited(buf.str(), delimiter);
}

std::uint32_t FeatureSpec::levels() const {
    switch (kind) {
        case FeatureKind::binary: return 2;
        case FeatureKind::categorical: return static_cast<std::uint32_t>(categories.size());
        case FeatureKind::numeric: return static_cast<std::uint32_t>(cuts.size()) + 1;
    }
    return 0;
}

std::uint32_t discretize(double value, std::span<const double> cuts) {
    const auto it = std::upper_bound(cuts.begin(), cuts.end(), value,
                                     [](double v, double cut) { return v < cut; });
    return static_cast<std::uint32_t>(it - cuts.begin());
}

std::vector<double> quantile_cuts(std::vector<double> values, std::uint32_t levels) {
    if (levels < 2) throw DataError("need at least 2 levels");
    if (values.empty()) throw DataError("no values to place cuts on");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    std::vector<double> cuts;
    for (std::uint32_t k = 1; k < levels; ++k) {
        // Linear interpolation between order statistics at quantile k/levels.
        const double p = static_cast<double>(k) * static_cast<double>(n - 1) / levels;
        const auto i = static_cast<std::size_t>(p);
        const double frac = p - static_cast<double>(i);
        const double cut =
            i + 1 < n ? values[i] + frac * (values[i + 1] - values[i]) : values[i];
        if (cuts.empty() || cut > cuts.back()) cuts.push_back(cut);
    }
    return cuts;
}

std::vector<double> equal_width_cuts(double lo, double hi, std::uint32_t levels) {
    if (levels < 2) throw DataError("need at least 2 levels");
    std::vector<double> cuts;
    for (std::uint32_t k = 1; k < levels; ++k) {
        const double cut = lo + (hi - lo) * k / levels;
        if (cuts.empty() || cut > cuts.back()) cuts.push_back(cut);
    }
    return cuts;
}

Bits encode_integer(std::uint64_t level, std::uint32_t width) {
    if (width >= 64 || level >= (1ULL << width))
        throw DataError("level " + std::to_string(level) + " does not fit in " +
                        std::to_string(width) + " bits");
    return Bits::from_value(width, level);
}

Bits one_hot(std::uint32_t index, std::uint32_t cardinality) {
    if (index >= cardinality) throw DataError("one-hot index out of range");
    Bits b(cardinality);
    b.set(index, true);
    return b;
}

Schema infer_schema(const RawTable& table, const BinarizeConfig& config) {
    if (table.rows.empty()) throw DataError("empty table: no data rows");
    const std::size_t label_col = table.column_index(config.label_column);
    for (const auto& row : table.rows)
        if (!is_binary_cell(row[label_col]))
            throw DataError("label value '" + row[label_col] + "' is not 0/1");

    Schema schema;
    schema.label_column = config.label_column;
    std::uint32_t offset = 0;
    for (std::size_t col = 0; col < table.columns.size(); ++col) {
        if (col == label_col) continue;
        FeatureSpec spec;
        spec.name = table.columns[col];
        spec.bit_offset = offset;

        bool any_missing = false, all_binary = true, all_numeric = true;
        for (const auto& row : table.rows) {
            const std::string& cell = row[col];
            if (cell.empty()) any_missing = true;
            if (!is_binary_cell(cell)) all_binary = false;
            if (!parses_as_double(cell)) all_numeric = false;
        }
        if (any_missing && !config.missing_category)
            throw DataError("missing value in column '" + spec.name + "'");

        if (any_missing || (!all_binary && !all_numeric)) {
            spec.kind = FeatureKind::categorical;
            spec.encoding = config.encoding;
            std::set<std::string> distinct;
            for (const auto& row : table.rows) distinct.insert(row[col]);
            spec.categories.assign(distinct.begin(), distinct.end());
            const auto card = static_cast<std::uint32_t>(spec.categories.size());
            spec.bit_width = config.encoding == Encoding::one_hot ? card : ceil_log2(card);
        } else if (all_binary) {
            spec.kind = FeatureKind::binary;
            spec.encoding = Encoding::level_binary;
            spec.bit_width = 1;
        } else {
            spec.kind = FeatureKind::numeric;
            spec.encoding = config.encoding;
            std::vector<double> values;
            values.reserve(table.rows.size());
            for (const auto& row : table.rows) values.push_back(parse_double(row[col]));
            if (config.equal_width) {
                const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
                spec.cuts = equal_width_cuts(*lo, *hi, config.levels);
            } else {
                spec.cuts = quantile_cuts(std::move(values), config.levels);
            }
            const auto levels = static_cast<std::uint32_t>(spec.cuts.size()) + 1;
            spec.bit_width = config.encoding == Encoding::one_hot ? levels : ceil_log2(levels);
        }
        offset += spec.bit_width;
        schema.features.push_back(std::move(spec));
    }
    if (schema.features.empty()) throw DataError("table has no feature columns");
    schema.total_width = offset;
    return schema;
}

namespace {

// Per-feature encoding as (level index, local bits).
Bits encode_feature(const FeatureSpec& spec, const std::string& cell) {
    std::uint32_t level = 0;
    switch (spec.kind) {
        case FeatureKind::binary:
            if (!is_binary_cell(cell))
                throw DataError("value '" + cell + "' in binary column '" + spec.name + "'");
            level = cell == "1";
            return Bits::from_value(1, level);
        case FeatureKind::numeric:
            level = discretize(parse_double(cell), spec.cuts);
            break;
        case FeatureKind::categorical: {
            const auto it =
                std::lower_bound(spec.categories.begin(), spec.categories.end(), cell);
            if (it == spec.categories.end() || *it != cell)
                throw DataError("unseen category '" + cell + "' in column '" + spec.name + "'");
            level = static_cast<std::uint32_t>(it - spec.categories.begin());
            break;
        }
    }
    return spec.encoding == Encoding::one_hot ? one_hot(level, spec.levels())
                                              : encode_integer(level, spec.bit_width);
}

}  // namespace

Bits encode_values(const Schema& schema, std::span<const std::string> values) {
    if (values.size() != schema.features.size())
        throw DataError("row has " + std::to_string(values.size()) + " values, schema has " +
                        std::to_string(schema.features.size()) + " features");
    Bits out(schema.total_width);
    for (std::size_t i = 0; i < schema.features.size(); ++i) {
        const FeatureSpec& spec = schema.features[i];
        const Bits local = encode_feature(spec, values[i]);
        for (std::uint32_t b = 0; b < spec.bit_width; ++b)
            if (local.get(b)) out.set(spec.bit_offset + b, true);
    }
    return out;
}

EncodedTable encode_table(const Schema& schema, const RawTable& table, bool require_label) {
    std::vector<std::size_t> feature_col(schema.features.size());
    for (std::size_t i = 0; i < schema.features.size(); ++i)
        feature_col[i] = table.column_index(schema.features[i].name);

    std::size_t label_col = table.columns.size();
    const bool has_label =
        std::find(table.columns.begin(), table.columns.end(), schema.label_column) !=
        table.columns.end();
    if (has_label) label_col = table.column_index(schema.label_column);
    else if (require_label)
        throw DataError("no column named '" + schema.label_column + "'");

    EncodedTable out;
    out.bits.reserve(table.rows.size());
    std::vector<std::string> values(schema.features.size());
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < values.size(); ++i) values[i] = row[feature_col[i]];
        out.bits.push_back(encode_values(schema, values));
        if (has_label) {
            if (!is_binary_cell(row[label_col]))
                throw DataError("label value '" + row[label_col] + "' is not 0/1");
            out.labels.push_back(row[label_col] == "1");
        }
    }
    return out;
}

namespace {

// Contiguous runs of levels whose code has the given bit set, e.g. "8..15".
std::string level_runs_with_bit(std::uint32_t levels, std::uint32_t bit) {
    std::string out;
    std::uint32_t lvl = 0;
    while (lvl < levels) {
        if (!((lvl >> bit) & 1)) {
            ++lvl;
            continue;
        }
        std::uint32_t end = lvl;
        while (end + 1 < levels && (((end + 1) >> bit) & 1)) ++end;
        if (!out.empty()) out += ", ";
        out += std::to_string(lvl);
        if (end > lvl) out += ".." + std::to_string(end);
        lvl = end + 1;
    }
    return out;
}

std::string level_range_text(const FeatureSpec& spec, std::uint32_t level) {
    if (spec.cuts.empty()) return "any " + spec.name;
    if (level == 0) return spec.name + " < " + format_double(spec.cuts.front());
    if (level == spec.cuts.size()) return spec.name + " >= " + format_double(spec.cuts.back());
    return format_double(spec.cuts[level - 1]) + " <= " + spec.name + " < " +
           format_double(spec.cuts[level]);
}

}  // namespace

std::string describe_bit(const Schema& schema, std::uint32_t position) {
    if (position >= schema.total_width)
        throw DataError("bit position " + std::to_string(position) + " out of range");
    for (const FeatureSpec& spec : schema.features) {
        if (position < spec.bit_offset || position >= spec.bit_offset + spec.bit_width) continue;
        const std::uint32_t k = position - spec.bit_offset;
        switch (spec.kind) {
            case FeatureKind::binary:
                return spec.name + " = 1";
            case FeatureKind::categorical:
                if (spec.encoding == Encoding::one_hot)
                    return spec.name + " = " + spec.categories[k];
                return "bit " + std::to_string(k + 1) + " of " + spec.name +
                       "'s category code (levels " + level_runs_with_bit(spec.levels(), k) + ")";
            case FeatureKind::numeric:
                if (spec.encoding == Encoding::one_hot)
                    return spec.name + " level " + std::to_string(k) + " (" +
                           level_range_text(spec, k) + ")";
                return "bit " + std::to_string(k + 1) + " of " + spec.name +
                       "'s level (levels " + level_runs_with_bit(spec.levels(), k) + ")";
        }
    }
    throw DataError("bit position " + std::to_string(position) + " not covered by any feature");
}

std::string schema_to_text(const Schema& schema) {
    std::string out = "#label\t" + schema.label_column + "\n";
    for (const FeatureSpec& spec : schema.features) {
        std::string params;
        if (spec.kind == FeatureKind::numeric) {
            for (std::size_t i = 0; i < spec.cuts.size(); ++i) {
                if (i) params += ',';
                params += format_double(spec.cuts[i]);
            }
        } else if (spec.kind == FeatureKind::categorical) {
            for (std::size_t i = 0; i < spec.categories.size(); ++i) {
                const std::string& cat = spec.categories[i];
                if (cat.find_first_of(",\t\n") != std::string::npos)
                    throw DataError("category '" + cat + "' cannot be serialized");
                if (i) params += ',';
                params += cat;
            }
        }
        out += spec.name + "\t" + kind_name(spec.kind) + "\t" + encoding_name(spec.encoding) +
               "\t" + std::to_string(spec.bit_offset) + "\t" + std::to_string(spec.bit_width) +
               "\t" + params + "\n";
    }
    return out;
}

Schema schema_from_text(std::string_view text) {
    Schema schema;
    std::size_t start = 0;
    bool label_seen = false;
    std::uint32_t offset = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        auto fields = split(line, '\t');
        if (!label_seen) {
            if (fields.size() != 2 || fields[0] != "#label")
                throw DataError("schema must start with a #label line");
            schema.label_column = fields[1];
            label_seen = true;
            continue;
        }
        if (fields.size() != 6) throw DataError("schema line needs 6 tab-separated fields");
        FeatureSpec spec;
        spec.name = fields[0];
        spec.kind = parse_kind(fields[1]);
        spec.encoding = parse_encoding(fields[2]);
        spec.bit_offset = static_cast<std::uint32_t>(std::stoul(fields[3]));
        spec.bit_width = static_cast<std::uint32_t>(std::stoul(fields[4]));
        if (spec.bit_width == 0) throw DataError("feature bit width must be positive");
        if (spec.bit_offset != offset) throw DataError("schema bit offsets are not contiguous");
        if (spec.kind == FeatureKind::numeric && !fields[5].empty()) {
            for (const auto& tok : split(fields[5], ',')) {
                const double cut = parse_double(tok);
                if (!spec.cuts.empty() && cut <= spec.cuts.back())
                    throw DataError("cuts not strictly ascending in '" + spec.name + "'");
                spec.cuts.push_back(cut);
            }
        } else if (spec.kind == FeatureKind::categorical) {
            spec.categories = split(fields[5], ',');
            if (!std::is_sorted(spec.categories.begin(), spec.categories.end()))
                throw DataError("categories not sorted in '" + spec.name + "'");
        }
        offset += spec.bit_width;
        schema.features.push_back(std::move(spec));
    }
    if (!label_seen) throw DataError("schema must start with a #label line");
    if (schema.features.empty()) throw DataError("schema has no features");
    schema.total_width = offset;
    return schema;
}

double parse_double(std::string_view token) {
    double out;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
    if (ec != std::errc() || ptr != token.data() + token.size())
        throw DataError("'" + std::string(token) + "' is not a number");
    return out;
}

std::string format_double(double value) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

}  // namespace bfmin
