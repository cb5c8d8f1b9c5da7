#include "bfmin/pla.hpp"

#include <charconv>

#include "bfmin/error.hpp"

namespace bfmin {

namespace {

std::vector<std::string> split_tokens(std::string_view line) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
        if (j > i) tokens.emplace_back(line.substr(i, j - i));
        i = j;
    }
    return tokens;
}

std::uint64_t parse_count(std::string_view token, std::string_view directive) {
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw DataError("bad " + std::string(directive) + " count '" + std::string(token) + "'");
    return value;
}

}  // namespace

PlaProblem read_pla(std::string_view text, std::uint64_t max_expand) {
    PlaProblem out;
    std::uint32_t width = 0;
    bool have_i = false, have_o = false, have_end = false;
    std::uint64_t declared_products = 0;
    bool have_p = false;
    std::uint64_t product_lines = 0, expanded = 0;
    std::vector<Bits> on, off;

    std::size_t start = 0;
    while (start < text.size() && !have_end) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        if (const std::size_t hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        const auto tokens = split_tokens(line);
        if (tokens.empty()) continue;

        if (tokens[0][0] == '.') {
            const std::string& dir = tokens[0];
            if (dir == ".i") {
                if (tokens.size() != 2) throw DataError(".i expects one count");
                const std::uint64_t n = parse_count(tokens[1], ".i");
                if (n == 0 || n > (1u << 20)) throw DataError(".i count out of range");
                width = static_cast<std::uint32_t>(n);
                have_i = true;
            } else if (dir == ".o") {
                if (tokens.size() != 2 || parse_count(tokens[1], ".o") != 1)
                    throw DataError("only single-output PLA files are supported (.o 1)");
                have_o = true;
            } else if (dir == ".ilb") {
                out.input_labels.assign(tokens.begin() + 1, tokens.end());
            } else if (dir == ".ob") {
                if (tokens.size() != 2) throw DataError(".ob expects one name");
                out.output_label = tokens[1];
            } else if (dir == ".p") {
                if (tokens.size() != 2) throw DataError(".p expects one count");
                declared_products = parse_count(tokens[1], ".p");
                have_p = true;
            } else if (dir == ".type") {
                if (tokens.size() != 2 || tokens[1] != "fr")
                    throw DataError("unsupported .type (only fr)");
            } else if (dir == ".e" || dir == ".end") {
                have_end = true;
            } else {
                throw DataError("unknown PLA directive '" + dir + "'");
            }
            continue;
        }

        // Product term: every token but the last is input plane (spaces
        // allowed inside it), the last is the single output column.
        if (!have_i) throw DataError("product term before .i");
        if (tokens.size() < 2) throw DataError("product term missing output column");
        std::string inputs;
        for (std::size_t t = 0; t + 1 < tokens.size(); ++t) inputs += tokens[t];
        if (inputs.size() != width)
            throw DataError("product term has " + std::to_string(inputs.size()) +
                            " inputs, expected " + std::to_string(width));
        if (tokens.back().size() != 1) throw DataError("output column must be one character");
        const char out_char = tokens.back()[0];
        ++product_lines;

        if (out_char == '-' || out_char == '~') continue;
        if (out_char != '0' && out_char != '1')
            throw DataError(std::string("bad output character '") + out_char + "'");

        const Cube cube = Cube::parse(inputs);
        if (cube.minterm_count() > max_expand || (expanded += cube.minterm_count()) > max_expand)
            throw IntractableError(IntractableError::Limit::minterms, max_expand);
        auto& side = out_char == '1' ? on : off;
        for_each_minterm(cube, [&](const Bits& m) { side.push_back(m); });
    }

    if (!have_i) throw DataError("PLA file is missing .i");
    if (!have_o) throw DataError("PLA file is missing .o");
    if (!have_end) throw DataError("PLA file is missing .e");
    if (!out.input_labels.empty() && out.input_labels.size() != width)
        throw DataError(".ilb names " + std::to_string(out.input_labels.size()) +
                        " inputs, expected " + std::to_string(width));
    if (have_p && declared_products != product_lines)
        throw DataError(".p declares " + std::to_string(declared_products) + " products, file has " +
                        std::to_string(product_lines));

    out.problem = Problem::make(width, std::move(on), std::move(off));
    return out;
}

namespace {

std::string header(std::uint32_t width, std::span<const std::string> input_labels,
                   std::string_view output_label, std::size_t products) {
    if (!input_labels.empty() && input_labels.size() != width)
        throw DataError(".ilb names must match the input count");
    std::string out = ".i " + std::to_string(width) + "\n.o 1\n";
    if (!input_labels.empty()) {
        out += ".ilb";
        for (const std::string& name : input_labels) out += " " + name;
        out += "\n";
    }
    if (!output_label.empty()) out += ".ob " + std::string(output_label) + "\n";
    out += ".type fr\n.p " + std::to_string(products) + "\n";
    return out;
}

}  // namespace

std::string write_pla(const Problem& problem, std::span<const std::string> input_labels,
                      std::string_view output_label) {
    std::string out = header(problem.width, input_labels, output_label,
                             problem.on.size() + problem.off.size());
    // Merge the two sorted sides so rows come out in ascending value order.
    std::size_t i = 0, j = 0;
    while (i < problem.on.size() || j < problem.off.size()) {
        const bool take_on = j == problem.off.size() ||
                             (i < problem.on.size() && value_less(problem.on[i], problem.off[j]));
        if (take_on) out += problem.on[i++].to_string() + " 1\n";
        else out += problem.off[j++].to_string() + " 0\n";
    }
    return out + ".e\n";
}

std::string write_pla(const Cover& cover, std::span<const std::string> input_labels,
                      std::string_view output_label) {
    std::string out = header(cover.width(), input_labels, output_label, cover.size());
    for (const Cube& cube : cover.cubes()) out += cube.to_string() + " 1\n";
    return out + ".e\n";
}

}  // namespace bfmin
