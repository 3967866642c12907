#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace eqlab {

// Fixed-width dynamic bitset with the few word-parallel ops the searches need.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }
    std::size_t words() const { return w_.size(); }
    const std::uint64_t* data() const { return w_.data(); }
    std::uint64_t* data() { return w_.data(); }

    bool test(std::size_t i) const { return w_[i >> 6] >> (i & 63) & 1u; }
    void set(std::size_t i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    void set_all() {
        for (auto& w : w_) w = ~std::uint64_t{0};
        trim();
    }
    void flip_all() {
        for (auto& w : w_) w = ~w;
        trim();
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    bool none() const {
        for (auto w : w_)
            if (w) return false;
        return true;
    }

    // Index of the first set bit at or after `from`, or size() if none.
    std::size_t next(std::size_t from) const {
        if (from >= n_) return n_;
        std::size_t i = from >> 6;
        std::uint64_t w = w_[i] & (~std::uint64_t{0} << (from & 63));
        while (true) {
            if (w) return (i << 6) + static_cast<std::size_t>(std::countr_zero(w));
            if (++i == w_.size()) return n_;
            w = w_[i];
        }
    }
    std::size_t first() const { return next(0); }

    Bitset& operator&=(const Bitset& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    Bitset& operator|=(const Bitset& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    Bitset& operator^=(const Bitset& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
        return *this;
    }
    Bitset& and_not(const Bitset& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
        return *this;
    }
    friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
    friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
    friend Bitset operator^(Bitset a, const Bitset& b) { return a ^= b; }
    friend bool operator==(const Bitset& a, const Bitset& b) { return a.n_ == b.n_ && a.w_ == b.w_; }

    std::vector<int> indices() const {
        std::vector<int> out;
        for (std::size_t i = first(); i < n_; i = next(i + 1)) out.push_back(static_cast<int>(i));
        return out;
    }

private:
    void trim() {
        if (n_ % 64 && !w_.empty()) w_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
    }

    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

inline std::size_t and_count(const Bitset& a, const Bitset& b) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < a.words(); ++i) c += static_cast<std::size_t>(std::popcount(a.data()[i] & b.data()[i]));
    return c;
}

inline std::size_t and_count(const Bitset& a, const Bitset& b, const Bitset& c) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < a.words(); ++i)
        n += static_cast<std::size_t>(std::popcount(a.data()[i] & b.data()[i] & c.data()[i]));
    return n;
}

}  // namespace eqlab
