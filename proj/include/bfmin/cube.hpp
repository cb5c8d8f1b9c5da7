#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "bfmin/bits.hpp"

namespace bfmin {

// Ternary cube over {0,1,-}. care bit set = literal present, value bit
// holds its polarity. Canonical form keeps value 0 wherever care is 0,
// so equality and hashing work directly on the two bit vectors.
class Cube {
public:
    Cube() = default;
    Cube(Bits care, Bits value);

    // Full cube (all positions free).
    static Cube top(std::uint32_t width);
    static Cube minterm(const Bits& value);
    static Cube parse(std::string_view text);

    std::uint32_t width() const { return care_.width(); }
    const Bits& care() const { return care_; }
    const Bits& value() const { return value_; }

    bool is_free(std::uint32_t pos) const { return !care_.get(pos); }
    // Literal polarity at a cared position.
    bool literal(std::uint32_t pos) const { return value_.get(pos); }

    std::uint32_t literal_count() const { return care_.popcount(); }
    std::uint32_t free_count() const { return width() - literal_count(); }
    // 2^free_count, saturating at uint64 max.
    std::uint64_t minterm_count() const;

    bool contains(const Bits& minterm) const;
    // Every minterm of other lies in this cube.
    bool subsumes(const Cube& other) const;
    bool intersects(const Cube& other) const;

    Cube with_free(std::uint32_t pos) const;
    Cube with_fixed(std::uint32_t pos, bool v) const;

    std::string to_string() const;
    std::size_t hash() const;

    friend bool operator==(const Cube&, const Cube&) = default;

private:
    Bits care_;
    Bits value_;
};

// Orders cubes by their text with character order '-' < '0' < '1',
// leftmost (most significant) position first.
bool textual_less(const Cube& a, const Cube& b);

struct CubeHash {
    std::size_t operator()(const Cube& c) const { return c.hash(); }
};

// a \ b as a list of pairwise-disjoint cubes. Splits on b's literal
// positions in ascending order, so sharp(--, 11) = [-0, 01].
std::vector<Cube> cube_sharp(const Cube& a, const Cube& b);

// a minus every cube in bs (iterated sharp). Result cubes are disjoint.
std::vector<Cube> cube_difference(const Cube& a, const std::vector<Cube>& bs);

// Visit minterms in ascending numeric order. Caller bounds free_count.
void for_each_minterm(const Cube& cube, const std::function<void(const Bits&)>& fn);

struct CoverCost {
    std::uint64_t cubes = 0;
    std::uint64_t literals = 0;
    friend auto operator<=>(const CoverCost&, const CoverCost&) = default;
};

// Cube set kept sorted by textual_less with no duplicates.
class Cover {
public:
    Cover() = default;
    explicit Cover(std::uint32_t width) : width_(width) {}
    Cover(std::uint32_t width, std::vector<Cube> cubes);

    std::uint32_t width() const { return width_; }
    const std::vector<Cube>& cubes() const { return cubes_; }
    std::size_t size() const { return cubes_.size(); }
    bool empty() const { return cubes_.empty(); }

    void add(const Cube& c);
    void remove(std::size_t index);
    // Replace the cube at index, restoring sort order.
    void replace(std::size_t index, const Cube& c);
    // Drop cubes subsumed by a distinct remaining cube.
    void remove_subsumed();

    bool eval(const Bits& input) const;
    CoverCost cost() const;

    friend bool operator==(const Cover&, const Cover&) = default;

private:
    std::uint32_t width_ = 0;
    std::vector<Cube> cubes_;
};

}  // namespace bfmin
