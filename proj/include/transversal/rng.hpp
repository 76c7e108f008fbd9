#pragma once

#include <cassert>
#include <cstdint>
#include <random>
#include <vector>

namespace transversal {

// mt19937_64 plus our own int/real draws. std::uniform_int_distribution is not
// bit-stable across standard libraries; witnesses and CSVs must reproduce
// byte-identically from a seed, so the draw logic lives here.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // uniform in [0, bound), bound >= 1, via rejection
    std::uint64_t below(std::uint64_t bound) {
        assert(bound >= 1);
        std::uint64_t mask = ~std::uint64_t{0};
        if ((bound & (bound - 1)) == 0) return eng_() & (bound - 1);
        std::uint64_t limit = mask - mask % bound;
        std::uint64_t x;
        do { x = eng_(); } while (x >= limit);
        return x % bound;
    }

    int range(int lo, int hi_exclusive) {
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi_exclusive - lo)));
    }

    double real() { // [0,1)
        return static_cast<double>(eng_() >> 11) * (1.0 / 9007199254740992.0);
    }

    bool chance(double p) { return real() < p; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[below(i)]);
    }

    // k distinct elements of v, order randomised
    template <typename T>
    std::vector<T> sample(std::vector<T> v, std::size_t k) {
        assert(k <= v.size());
        for (std::size_t i = 0; i < k; ++i)
            std::swap(v[i], v[i + below(v.size() - i)]);
        v.resize(k);
        return v;
    }

    // derive an independent stream; used to hand sub-steps their own rng
    Rng fork() { return Rng(splitmix(next_u64())); }

    static std::uint64_t splitmix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    // stable seed derivation for (seed, stream, index) tuples
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream, std::uint64_t index = 0) {
        return splitmix(splitmix(seed ^ splitmix(stream + 0x6a09e667f3bcc908ULL)) ^ index);
    }

private:
    std::mt19937_64 eng_;
};

} // namespace transversal
