#include "bfmin/binarize.hpp"

#include <vector>

#include "bfmin/error.hpp"
#include "doctest.h"

using namespace bfmin;

namespace {

RawTable table_from(std::vector<std::string> columns,
                    std::vector<std::vector<std::string>> rows) {
    RawTable t;
    t.columns = std::move(columns);
    t.rows = std::move(rows);
    return t;
}

}  // namespace

TEST_CASE("parse_delimited trims cells and skips blank lines") {
    const RawTable t = parse_delimited(" a , b \r\n 1 , 2 \n\n3,4\n");
    CHECK(t.columns == std::vector<std::string>{"a", "b"});
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0] == std::vector<std::string>{"1", "2"});
    CHECK(t.rows[1] == std::vector<std::string>{"3", "4"});
    CHECK(t.column_index("b") == 1);
    CHECK_THROWS_AS(t.column_index("c"), DataError);
}

TEST_CASE("parse_delimited keeps empty cells and validates arity") {
    const RawTable t = parse_delimited("a;b\n1;\n", ';');
    CHECK(t.rows[0][1] == "");
    CHECK_THROWS_AS(parse_delimited("a,b\n1,2,3\n"), DataError);
    CHECK_THROWS_AS(parse_delimited(""), DataError);
}

TEST_CASE("format_delimited inverts parse_delimited") {
    const std::string text = "a,b\n1,2\n3,4\n";
    CHECK(format_delimited(parse_delimited(text)) == text);
}

TEST_CASE("quantile cuts interpolate order statistics") {
    CHECK(quantile_cuts({1, 2, 3, 4, 5, 6, 7, 8}, 4) ==
          std::vector<double>{2.75, 4.5, 6.25});
    CHECK(quantile_cuts({5, 5, 5}, 4) == std::vector<double>{5});  // duplicates collapse
    CHECK_THROWS_AS(quantile_cuts({}, 4), DataError);
    CHECK_THROWS_AS(quantile_cuts({1, 2}, 1), DataError);
}

TEST_CASE("sixteen distinct values at sixteen levels discretize to themselves") {
    std::vector<double> values;
    for (int v = 0; v < 16; ++v) values.push_back(v);
    const auto cuts = quantile_cuts(values, 16);
    REQUIRE(cuts.size() == 15);
    for (int v = 0; v < 16; ++v)
        CHECK(discretize(v, cuts) == static_cast<std::uint32_t>(v));
}

TEST_CASE("discretize counts cuts at or below the value") {
    const std::vector<double> cuts = {10, 20};
    const std::vector<std::uint32_t> expected = {0, 1, 1, 1, 2, 2};
    const std::vector<double> inputs = {9, 10, 11, 19, 20, 21};
    for (std::size_t i = 0; i < inputs.size(); ++i)
        CHECK(discretize(inputs[i], cuts) == expected[i]);
}

TEST_CASE("equal width cuts split the range evenly") {
    CHECK(equal_width_cuts(0, 10, 5) == std::vector<double>{2, 4, 6, 8});
    // Degenerate range: duplicates collapse, one cut survives (same
    // convention as quantile_cuts on a constant column).
    CHECK(equal_width_cuts(3, 3, 4) == std::vector<double>{3});
}

TEST_CASE("integer and one-hot encodings") {
    CHECK(encode_integer(5, 3).to_string() == "101");
    CHECK_THROWS_AS(encode_integer(8, 3), DataError);
    CHECK(one_hot(2, 4).to_string() == "0100");
    CHECK_THROWS_AS(one_hot(4, 4), DataError);
}

TEST_CASE("infer_schema classifies columns and assigns contiguous offsets") {
    const RawTable t = table_from(
        {"flag", "color", "x", "label"},
        {{"0", "red", "1.5", "0"}, {"1", "blue", "2.5", "1"}, {"1", "red", "3.5", "1"}});
    BinarizeConfig config;
    config.levels = 2;
    const Schema schema = infer_schema(t, config);
    REQUIRE(schema.features.size() == 3);

    CHECK(schema.features[0].name == "flag");
    CHECK(schema.features[0].kind == FeatureKind::binary);
    CHECK(schema.features[0].bit_offset == 0);
    CHECK(schema.features[0].bit_width == 1);

    CHECK(schema.features[1].name == "color");
    CHECK(schema.features[1].kind == FeatureKind::categorical);
    CHECK(schema.features[1].categories == std::vector<std::string>{"blue", "red"});
    CHECK(schema.features[1].bit_offset == 1);
    CHECK(schema.features[1].bit_width == 1);  // 2 categories, level-binary

    CHECK(schema.features[2].name == "x");
    CHECK(schema.features[2].kind == FeatureKind::numeric);
    CHECK(schema.features[2].cuts == std::vector<double>{2.5});
    CHECK(schema.features[2].bit_offset == 2);
    CHECK(schema.total_width == 3);
}

TEST_CASE("missing cells are an error unless mapped to their own category") {
    const RawTable t =
        table_from({"c", "label"}, {{"", "0"}, {"a", "1"}});
    CHECK_THROWS_AS(infer_schema(t, {}), DataError);

    BinarizeConfig config;
    config.missing_category = true;
    const Schema schema = infer_schema(t, config);
    CHECK(schema.features[0].kind == FeatureKind::categorical);
    CHECK(schema.features[0].categories == std::vector<std::string>{"", "a"});
}

TEST_CASE("encode_values concatenates feature blocks at their offsets") {
    Schema schema;
    schema.label_column = "label";
    FeatureSpec num;
    num.name = "x";
    num.kind = FeatureKind::numeric;
    num.cuts = {10, 20, 30};
    num.bit_offset = 0;
    num.bit_width = 2;
    FeatureSpec cat;
    cat.name = "c";
    cat.kind = FeatureKind::categorical;
    cat.encoding = Encoding::one_hot;
    cat.categories = {"a", "b", "c"};
    cat.bit_offset = 2;
    cat.bit_width = 3;
    schema.features = {num, cat};
    schema.total_width = 5;

    // x=25 -> level 2 -> bits 10; c=b -> one-hot index 1 -> bits 010.
    const std::vector<std::string> row = {"25", "b"};
    CHECK(encode_values(schema, row).to_string() == "01010");

    const std::vector<std::string> bad = {"25", "z"};
    CHECK_THROWS_AS(encode_values(schema, bad), DataError);
    const std::vector<std::string> short_row = {"25"};
    CHECK_THROWS_AS(encode_values(schema, short_row), DataError);
}

TEST_CASE("encode_table matches columns by name and validates labels") {
    const RawTable t = table_from({"label", "x"}, {{"0", "1"}, {"1", "0"}});
    BinarizeConfig config;
    const Schema schema = infer_schema(t, config);
    const EncodedTable encoded = encode_table(schema, t, true);
    REQUIRE(encoded.bits.size() == 2);
    CHECK(encoded.labels == std::vector<int>{0, 1});
    CHECK(encoded.bits[0].to_string() == "1");
    CHECK(encoded.bits[1].to_string() == "0");

    const RawTable unlabeled = table_from({"x"}, {{"1"}});
    CHECK(encode_table(schema, unlabeled, false).labels.empty());
    CHECK_THROWS_AS(encode_table(schema, unlabeled, true), DataError);

    const RawTable bad = table_from({"label", "x"}, {{"2", "1"}});
    CHECK_THROWS_AS(encode_table(schema, bad, true), DataError);
}

TEST_CASE("describe_bit names every position") {
    const RawTable t = table_from(
        {"flag", "color", "x", "label"},
        {{"0", "red", "1", "0"}, {"1", "blue", "2", "1"}, {"1", "green", "3", "1"},
         {"0", "red", "4", "0"}});
    BinarizeConfig config;
    config.levels = 4;
    const Schema schema = infer_schema(t, config);
    // flag: 1 bit; color: 3 categories level-binary -> 2 bits; x: cuts -> 2 bits.
    CHECK(describe_bit(schema, 0) == "flag = 1");
    CHECK(describe_bit(schema, 1) == "bit 1 of color's category code (levels 1)");
    CHECK(describe_bit(schema, 2) == "bit 2 of color's category code (levels 2)");
    CHECK(describe_bit(schema, 3) == "bit 1 of x's level (levels 1, 3)");
    CHECK_THROWS_AS(describe_bit(schema, 5), DataError);

    BinarizeConfig hot;
    hot.levels = 4;
    hot.encoding = Encoding::one_hot;
    const Schema hot_schema = infer_schema(t, hot);
    CHECK(describe_bit(hot_schema, 1) == "color = blue");
    CHECK(describe_bit(hot_schema, 2) == "color = green");
}

TEST_CASE("schema text round-trips byte-exactly") {
    const RawTable t = table_from(
        {"flag", "color", "x", "label"},
        {{"0", "red", "1.25", "0"}, {"1", "blue", "2.5", "1"}, {"1", "red", "3.75", "1"}});
    BinarizeConfig config;
    config.levels = 4;
    const Schema schema = infer_schema(t, config);
    const std::string text = schema_to_text(schema);
    const Schema parsed = schema_from_text(text);
    CHECK(schema_to_text(parsed) == text);
    CHECK(parsed.total_width == schema.total_width);
    CHECK(parsed.label_column == "label");
}

TEST_CASE("schema text rejects malformed input") {
    CHECK_THROWS_AS(schema_from_text("f\tbinary\tlevel-binary\t0\t1\t\n"), DataError);
    CHECK_THROWS_AS(schema_from_text("#label\ty\nf\tbinary\tlevel-binary\t1\t1\t\n"),
                    DataError);  // offset gap
    CHECK_THROWS_AS(schema_from_text("#label\ty\nf\tmagic\tlevel-binary\t0\t1\t\n"),
                    DataError);
    CHECK_THROWS_AS(schema_from_text("#label\ty\n"), DataError);  // no features
}

TEST_CASE("doubles print in shortest round-trip form") {
    CHECK(format_double(2.75) == "2.75");
    CHECK(format_double(1.0) == "1");
    CHECK(parse_double("2.75") == 2.75);
    CHECK(parse_double(format_double(0.1)) == 0.1);
    CHECK_THROWS_AS(parse_double("1.2.3"), DataError);
    CHECK_THROWS_AS(parse_double(""), DataError);
}
