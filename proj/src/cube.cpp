#include "bfmin/cube.hpp"

#include <algorithm>
#include <bit>

#include "bfmin/error.hpp"

namespace bfmin {

Cube::Cube(Bits care, Bits value) : care_(std::move(care)), value_(std::move(value)) {
    if (care_.width() != value_.width()) throw DataError("cube care/value width mismatch");
    // Canonicalize: free positions carry value 0.
    for (std::uint32_t i = 0; i < value_.word_count(); ++i)
        value_.set_word(i, value_.word(i) & care_.word(i));
}

Cube Cube::top(std::uint32_t width) { return Cube(Bits(width), Bits(width)); }

Cube Cube::minterm(const Bits& value) {
    Bits care(value.width());
    for (std::uint32_t i = 0; i < care.word_count(); ++i) care.set_word(i, ~0ULL);
    return Cube(std::move(care), value);
}

Cube Cube::parse(std::string_view text) {
    const auto width = static_cast<std::uint32_t>(text.size());
    Bits care(width), value(width);
    for (std::uint32_t i = 0; i < width; ++i) {
        const char c = text[i];
        const std::uint32_t pos = width - 1 - i;
        if (c == '-') continue;
        if (c != '0' && c != '1')
            throw DataError("bad cube character '" + std::string(1, c) + "'");
        care.set(pos, true);
        if (c == '1') value.set(pos, true);
    }
    return Cube(std::move(care), std::move(value));
}

std::uint64_t Cube::minterm_count() const {
    const std::uint32_t free = free_count();
    if (free >= 64) return ~0ULL;
    return 1ULL << free;
}

bool Cube::contains(const Bits& minterm) const {
    for (std::uint32_t i = 0; i < care_.word_count(); ++i)
        if ((minterm.word(i) ^ value_.word(i)) & care_.word(i)) return false;
    return true;
}

bool Cube::subsumes(const Cube& other) const {
    for (std::uint32_t i = 0; i < care_.word_count(); ++i) {
        if (care_.word(i) & ~other.care_.word(i)) return false;
        if ((value_.word(i) ^ other.value_.word(i)) & care_.word(i)) return false;
    }
    return true;
}

bool Cube::intersects(const Cube& other) const {
    for (std::uint32_t i = 0; i < care_.word_count(); ++i)
        if ((value_.word(i) ^ other.value_.word(i)) & care_.word(i) & other.care_.word(i))
            return false;
    return true;
}

Cube Cube::with_free(std::uint32_t pos) const {
    Cube c = *this;
    c.care_.set(pos, false);
    c.value_.set(pos, false);
    return c;
}

Cube Cube::with_fixed(std::uint32_t pos, bool v) const {
    Cube c = *this;
    c.care_.set(pos, true);
    c.value_.set(pos, v);
    return c;
}

std::string Cube::to_string() const {
    const std::uint32_t w = width();
    std::string s(w, '-');
    for (std::uint32_t pos = 0; pos < w; ++pos)
        if (care_.get(pos)) s[w - 1 - pos] = value_.get(pos) ? '1' : '0';
    return s;
}

std::size_t Cube::hash() const {
    const std::size_t h = care_.hash();
    return h ^ (value_.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

bool textual_less(const Cube& a, const Cube& b) {
    // Per position the character key is 2*care + value: '-'=0, '0'=2, '1'=3.
    for (std::uint32_t i = a.care().word_count(); i-- > 0;) {
        const std::uint64_t diff = (a.care().word(i) ^ b.care().word(i)) |
                                   (a.value().word(i) ^ b.value().word(i));
        if (diff == 0) continue;
        const int p = 63 - std::countl_zero(diff);
        const unsigned ka = ((a.care().word(i) >> p) & 1) * 2 + ((a.value().word(i) >> p) & 1);
        const unsigned kb = ((b.care().word(i) >> p) & 1) * 2 + ((b.value().word(i) >> p) & 1);
        return ka < kb;
    }
    return false;
}

std::vector<Cube> cube_sharp(const Cube& a, const Cube& b) {
    if (!a.intersects(b)) return {a};
    std::vector<Cube> pieces;
    Cube rest = a;
    for (std::uint32_t pos = 0; pos < a.width(); ++pos) {
        if (b.is_free(pos) || !a.is_free(pos)) continue;
        pieces.push_back(rest.with_fixed(pos, !b.literal(pos)));
        rest = rest.with_fixed(pos, b.literal(pos));
    }
    return pieces;  // empty when b subsumes a
}

std::vector<Cube> cube_difference(const Cube& a, const std::vector<Cube>& bs) {
    std::vector<Cube> pieces{a};
    for (const Cube& b : bs) {
        std::vector<Cube> next;
        for (const Cube& p : pieces) {
            auto split = cube_sharp(p, b);
            next.insert(next.end(), split.begin(), split.end());
        }
        pieces = std::move(next);
        if (pieces.empty()) break;
    }
    return pieces;
}

void for_each_minterm(const Cube& cube, const std::function<void(const Bits&)>& fn) {
    std::vector<std::uint32_t> free;
    for (std::uint32_t pos = 0; pos < cube.width(); ++pos)
        if (cube.is_free(pos)) free.push_back(pos);
    if (free.size() >= 64) throw DataError("cube too large to enumerate");
    Bits m = cube.value();
    const std::uint64_t total = 1ULL << free.size();
    // Free positions ascend, so counter order is ascending numeric order.
    for (std::uint64_t counter = 0; counter < total; ++counter) {
        for (std::size_t j = 0; j < free.size(); ++j)
            m.set(free[j], (counter >> j) & 1);
        fn(m);
    }
}

Cover::Cover(std::uint32_t width, std::vector<Cube> cubes)
    : width_(width), cubes_(std::move(cubes)) {
    for (const Cube& c : cubes_)
        if (c.width() != width_) throw DataError("cover cube width mismatch");
    std::sort(cubes_.begin(), cubes_.end(), textual_less);
    cubes_.erase(std::unique(cubes_.begin(), cubes_.end()), cubes_.end());
}

void Cover::add(const Cube& c) {
    if (c.width() != width_) throw DataError("cover cube width mismatch");
    auto it = std::lower_bound(cubes_.begin(), cubes_.end(), c, textual_less);
    if (it != cubes_.end() && *it == c) return;
    cubes_.insert(it, c);
}

void Cover::remove(std::size_t index) { cubes_.erase(cubes_.begin() + index); }

void Cover::replace(std::size_t index, const Cube& c) {
    remove(index);
    add(c);
}

void Cover::remove_subsumed() {
    std::vector<char> dead(cubes_.size(), 0);
    for (std::size_t i = 0; i < cubes_.size(); ++i) {
        if (dead[i]) continue;
        for (std::size_t j = 0; j < cubes_.size(); ++j) {
            if (i == j || dead[j]) continue;
            if (cubes_[i].subsumes(cubes_[j])) dead[j] = 1;
        }
    }
    std::size_t out = 0;
    for (std::size_t i = 0; i < cubes_.size(); ++i)
        if (!dead[i]) cubes_[out++] = cubes_[i];
    cubes_.resize(out);
}

bool Cover::eval(const Bits& input) const {
    for (const Cube& c : cubes_)
        if (c.contains(input)) return true;
    return false;
}

CoverCost Cover::cost() const {
    CoverCost cost{cubes_.size(), 0};
    for (const Cube& c : cubes_) cost.literals += c.literal_count();
    return cost;
}

}  // namespace bfmin
