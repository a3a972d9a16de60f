#pragma once

#include <cstdint>
#include <vector>

namespace lpdp {

// Splitmix64. All randomized components (maze generator, BFS extractor,
// partitioner) draw from this generator so that corpora are reproducible
// bit-for-bit across platforms and implementations:
//
//   state += 0x9e3779b97f4a7c15
//   z = state; z = (z ^ z>>30) * 0xbf58476d1ce4e5b9
//   z = (z ^ z>>27) * 0x94d049bb133111eb
//   return z ^ z>>31
//
// Bounded draws use rejection sampling (below), never std::uniform_int_distribution,
// whose output is implementation-defined.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform draw from [0, bound). bound must be > 0.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    // Uniform double in [0, 1), 53 bits of entropy.
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // First `count` elements of a seeded Fisher-Yates shuffle of items.
    template <typename T>
    std::vector<T> sample(const std::vector<T>& items, std::size_t count) {
        std::vector<T> pool = items;
        if (count > pool.size()) count = pool.size();
        for (std::size_t i = 0; i < count; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(below(pool.size() - i));
            std::swap(pool[i], pool[j]);
        }
        pool.resize(count);
        return pool;
    }

private:
    std::uint64_t state_;
};

} // namespace lpdp
