#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bfmin {

// Fixed-width bit vector. Position 0 is the least significant bit (b1 in
// rule listings), position width-1 the most significant (b_width).
// to_string() prints b_width first, matching PLA cube lines.
//
// The first word lives inline so widths up to 64 never touch the heap;
// wider vectors spill the remaining words into tail_.
class Bits {
public:
    Bits() = default;
    explicit Bits(std::uint32_t width) : width_(width) {
        if (width > 64) tail_.assign((width + 63) / 64 - 1, 0);
    }

    static Bits from_value(std::uint32_t width, std::uint64_t value);
    static Bits parse(std::string_view text);

    std::uint32_t width() const { return width_; }
    std::uint32_t word_count() const { return width_ == 0 ? 0 : (width_ + 63) / 64; }

    std::uint64_t word(std::uint32_t i) const { return i == 0 ? head_ : tail_[i - 1]; }
    void set_word(std::uint32_t i, std::uint64_t w);

    bool get(std::uint32_t pos) const {
        return (word(pos >> 6) >> (pos & 63)) & 1;
    }
    void set(std::uint32_t pos, bool v);

    std::uint32_t popcount() const;
    bool none() const;
    // Lowest set position; width() when empty.
    std::uint32_t first_set() const;

    std::uint64_t low64() const { return head_; }
    std::string to_string() const;

    std::size_t hash() const;

    friend bool operator==(const Bits&, const Bits&) = default;

private:
    std::uint32_t width_ = 0;
    std::uint64_t head_ = 0;
    std::vector<std::uint64_t> tail_;

    std::uint64_t last_word_mask() const {
        const std::uint32_t used = width_ & 63;
        return used == 0 ? ~0ULL : (1ULL << used) - 1;
    }
};

// Unsigned integer order; widths must match.
bool value_less(const Bits& a, const Bits& b);

// Sort ascending by value and drop duplicates.
void sort_unique_minterms(std::vector<Bits>& minterms);

struct BitsHash {
    std::size_t operator()(const Bits& b) const { return b.hash(); }
};

}  // namespace bfmin
