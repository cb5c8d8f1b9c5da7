#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bfmin/cube.hpp"
#include "bfmin/problem.hpp"

namespace bfmin {

// Single-output PLA in the fr convention: output 1 rows are on-set,
// output 0 rows are off-set, output - rows carry nothing.
struct PlaProblem {
    Problem problem;
    std::vector<std::string> input_labels;  // empty when the file has no .ilb
    std::string output_label;               // empty when the file has no .ob
};

// Rows with free input positions expand to their minterms; the total
// expansion is capped (IntractableError beyond it). Requires .i, .o 1,
// and a final .e; .p and .ilb arities are validated, .type must be fr.
PlaProblem read_pla(std::string_view text, std::uint64_t max_expand = 1ULL << 24);

// Minterm rows (on then off interleaved in ascending value order), so a
// written file reads back to the identical Problem byte-for-byte.
std::string write_pla(const Problem& problem, std::span<const std::string> input_labels = {},
                      std::string_view output_label = {});

// Cover rows in stored (textual) order, all with output 1.
std::string write_pla(const Cover& cover, std::span<const std::string> input_labels = {},
                      std::string_view output_label = {});

}  // namespace bfmin
