#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace powergraph {

/// Growable bitset used for vertex sets and module-id sets.
///
/// Binary operations accept operands of different sizes; missing words are
/// treated as zero. This lets module-id sets grow as modules are created
/// without resizing every neighbour index.
class Bitset {
public:
    using word_type = std::uint64_t;
    static constexpr std::size_t word_bits = 64;
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    Bitset() = default;
    explicit Bitset(std::size_t size) : size_(size), words_(word_count(size), 0) {}

    std::size_t size() const { return size_; }

    void resize(std::size_t size) {
        size_ = size;
        words_.resize(word_count(size), 0);
        trim();
    }

    // Grows (never shrinks) so that bit `index` is addressable.
    void reserve_bit(std::size_t index) {
        if (index >= size_) resize(index + 1);
    }

    bool test(std::size_t index) const {
        if (index >= size_) return false;
        return (words_[index / word_bits] >> (index % word_bits)) & 1u;
    }

    void set(std::size_t index) {
        reserve_bit(index);
        words_[index / word_bits] |= word_type{1} << (index % word_bits);
    }

    void reset(std::size_t index) {
        if (index >= size_) return;
        words_[index / word_bits] &= ~(word_type{1} << (index % word_bits));
    }

    void clear() {
        for (auto& w : words_) w = 0;
    }

    std::size_t count() const {
        std::size_t total = 0;
        for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
        return total;
    }

    bool any() const {
        for (auto w : words_)
            if (w != 0) return true;
        return false;
    }
    bool none() const { return !any(); }

    bool intersects(const Bitset& other) const {
        const std::size_t n = std::min(words_.size(), other.words_.size());
        for (std::size_t i = 0; i < n; ++i)
            if (words_[i] & other.words_[i]) return true;
        return false;
    }

    std::size_t intersection_count(const Bitset& other) const {
        const std::size_t n = std::min(words_.size(), other.words_.size());
        std::size_t total = 0;
        for (std::size_t i = 0; i < n; ++i)
            total += static_cast<std::size_t>(std::popcount(words_[i] & other.words_[i]));
        return total;
    }

    bool is_subset_of(const Bitset& other) const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            const word_type theirs = i < other.words_.size() ? other.words_[i] : 0;
            if (words_[i] & ~theirs) return false;
        }
        return true;
    }

    Bitset& operator|=(const Bitset& other) {
        if (other.size_ > size_) resize(other.size_);
        for (std::size_t i = 0; i < other.words_.size(); ++i) words_[i] |= other.words_[i];
        return *this;
    }

    Bitset& operator&=(const Bitset& other) {
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] &= i < other.words_.size() ? other.words_[i] : 0;
        return *this;
    }

    // Set difference.
    Bitset& operator-=(const Bitset& other) {
        const std::size_t n = std::min(words_.size(), other.words_.size());
        for (std::size_t i = 0; i < n; ++i) words_[i] &= ~other.words_[i];
        return *this;
    }

    friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
    friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
    friend Bitset operator-(Bitset a, const Bitset& b) { return a -= b; }

    // Equality is on set contents, independent of the nominal size.
    friend bool operator==(const Bitset& a, const Bitset& b) {
        const std::size_t n = std::max(a.words_.size(), b.words_.size());
        for (std::size_t i = 0; i < n; ++i) {
            const word_type x = i < a.words_.size() ? a.words_[i] : 0;
            const word_type y = i < b.words_.size() ? b.words_[i] : 0;
            if (x != y) return false;
        }
        return true;
    }

    std::size_t find_first() const { return find_from(0); }
    std::size_t find_next(std::size_t index) const { return find_from(index + 1); }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            word_type w = words_[i];
            while (w) {
                const auto bit = static_cast<std::size_t>(std::countr_zero(w));
                f(i * word_bits + bit);
                w &= w - 1;
            }
        }
    }

    std::vector<std::size_t> indices() const {
        std::vector<std::size_t> out;
        out.reserve(count());
        for_each([&](std::size_t i) { out.push_back(i); });
        return out;
    }

private:
    static std::size_t word_count(std::size_t bits) { return (bits + word_bits - 1) / word_bits; }

    void trim() {
        if (size_ % word_bits != 0 && !words_.empty())
            words_.back() &= (word_type{1} << (size_ % word_bits)) - 1;
    }

    std::size_t find_from(std::size_t start) const {
        if (start >= size_) return npos;
        std::size_t wi = start / word_bits;
        word_type w = words_[wi] & (~word_type{0} << (start % word_bits));
        while (true) {
            if (w) return wi * word_bits + static_cast<std::size_t>(std::countr_zero(w));
            if (++wi >= words_.size()) return npos;
            w = words_[wi];
        }
    }

    std::size_t size_ = 0;
    std::vector<word_type> words_;
};

}  // namespace powergraph
