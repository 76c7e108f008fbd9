#pragma once

#include <bit>
#include <cstdint>
#include <cassert>
#include <vector>

namespace transversal {

// Fixed-capacity dynamic bitset sized at construction. Graphs here stay small
// (n <= a few hundred) so adjacency rows as bit words beat lists for the
// query-heavy search kernels.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(int n) : n_(n), words_((n + 63) / 64, 0) {}

    int capacity() const { return n_; }

    void set(int i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
    void reset(int i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

    void clear() { for (auto& w : words_) w = 0; }

    void set_all() {
        for (auto& w : words_) w = ~std::uint64_t{0};
        trim();
    }

    int count() const {
        int c = 0;
        for (auto w : words_) c += std::popcount(w);
        return c;
    }

    bool any() const {
        for (auto w : words_) if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    int count_and(const Bitset& o) const {
        assert(n_ == o.n_);
        int c = 0;
        for (std::size_t k = 0; k < words_.size(); ++k)
            c += std::popcount(words_[k] & o.words_[k]);
        return c;
    }

    bool intersects(const Bitset& o) const {
        assert(n_ == o.n_);
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k] & o.words_[k]) return true;
        return false;
    }

    Bitset& operator&=(const Bitset& o) {
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
        return *this;
    }
    Bitset& operator|=(const Bitset& o) {
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
        return *this;
    }
    Bitset& and_not(const Bitset& o) {
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k];
        return *this;
    }

    friend Bitset operator&(Bitset a, const Bitset& b) { a &= b; return a; }
    friend Bitset operator|(Bitset a, const Bitset& b) { a |= b; return a; }

    bool operator==(const Bitset& o) const = default;

    // lowest set bit >= from, or -1
    int next(int from = 0) const {
        if (from >= n_) return -1;
        int k = from >> 6;
        std::uint64_t w = words_[k] & (~std::uint64_t{0} << (from & 63));
        while (true) {
            if (w) {
                int i = (k << 6) + std::countr_zero(w);
                return i < n_ ? i : -1;
            }
            if (++k == static_cast<int>(words_.size())) return -1;
            w = words_[k];
        }
    }

    template <typename F>
    void for_each(F&& f) const {
        for (int i = next(0); i != -1; i = next(i + 1)) f(i);
    }

    std::vector<int> to_vector() const {
        std::vector<int> v;
        v.reserve(count());
        for_each([&](int i) { v.push_back(i); });
        return v;
    }

    static Bitset of(int n, const std::vector<int>& items) {
        Bitset b(n);
        for (int i : items) b.set(i);
        return b;
    }

private:
    void trim() {
        if (n_ & 63) words_.back() &= (~std::uint64_t{0} >> (64 - (n_ & 63)));
    }

    int n_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace transversal
