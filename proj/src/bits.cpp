#include "bfmin/bits.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "bfmin/error.hpp"

namespace bfmin {

Bits Bits::from_value(std::uint32_t width, std::uint64_t value) {
    Bits b(width);
    if (width == 0) {
        if (value != 0) throw DataError("value does not fit in width 0");
        return b;
    }
    const std::uint64_t mask = width >= 64 ? ~0ULL : (1ULL << width) - 1;
    if ((value & ~mask) != 0) throw DataError("value does not fit in width " + std::to_string(width));
    b.head_ = value;
    return b;
}

Bits Bits::parse(std::string_view text) {
    Bits b(static_cast<std::uint32_t>(text.size()));
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c != '0' && c != '1')
            throw DataError("bad bit character '" + std::string(1, c) + "'");
        // Leftmost character is the most significant position.
        if (c == '1') b.set(static_cast<std::uint32_t>(text.size() - 1 - i), true);
    }
    return b;
}

void Bits::set_word(std::uint32_t i, std::uint64_t w) {
    if (i + 1 == word_count()) w &= last_word_mask();
    if (i == 0) head_ = w;
    else tail_[i - 1] = w;
}

void Bits::set(std::uint32_t pos, bool v) {
    std::uint64_t& w = pos < 64 ? head_ : tail_[(pos >> 6) - 1];
    const std::uint64_t bit = 1ULL << (pos & 63);
    if (v) w |= bit;
    else w &= ~bit;
}

std::uint32_t Bits::popcount() const {
    std::uint32_t n = std::popcount(head_);
    for (std::uint64_t w : tail_) n += std::popcount(w);
    return n;
}

bool Bits::none() const {
    if (head_ != 0) return false;
    for (std::uint64_t w : tail_)
        if (w != 0) return false;
    return true;
}

std::uint32_t Bits::first_set() const {
    if (head_ != 0) return static_cast<std::uint32_t>(std::countr_zero(head_));
    for (std::size_t i = 0; i < tail_.size(); ++i)
        if (tail_[i] != 0)
            return static_cast<std::uint32_t>(64 * (i + 1) + std::countr_zero(tail_[i]));
    return width_;
}

std::string Bits::to_string() const {
    std::string s(width_, '0');
    for (std::uint32_t pos = 0; pos < width_; ++pos)
        if (get(pos)) s[width_ - 1 - pos] = '1';
    return s;
}

std::size_t Bits::hash() const {
    // splitmix-style word mixing; order-sensitive.
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ width_;
    auto mix = [&h](std::uint64_t w) {
        h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h *= 0xbf58476d1ce4e5b9ULL;
        h ^= h >> 31;
    };
    mix(head_);
    for (std::uint64_t w : tail_) mix(w);
    return static_cast<std::size_t>(h);
}

bool value_less(const Bits& a, const Bits& b) {
    for (std::uint32_t i = a.word_count(); i-- > 0;) {
        if (a.word(i) != b.word(i)) return a.word(i) < b.word(i);
    }
    return false;
}

void sort_unique_minterms(std::vector<Bits>& minterms) {
    std::sort(minterms.begin(), minterms.end(), value_less);
    minterms.erase(std::unique(minterms.begin(), minterms.end()), minterms.end());
}

}  // namespace bfmin
