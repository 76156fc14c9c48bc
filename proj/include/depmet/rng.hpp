#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace depmet {

/// Reproducible random source. std::mt19937_64's stream is pinned by the
/// standard, but the distribution adaptors are not, so bounded draws and
/// sampling are spelled out here to keep outputs identical across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, n) via rejection (no modulo bias).
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return v % n;
    }

    /// Uniform double in [0, 1) with 53-bit resolution.
    double unit() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// First n entries of a partial Fisher-Yates shuffle of [0, size).
    std::vector<std::size_t> sample_indices(std::size_t size, std::size_t n) {
        std::vector<std::size_t> idx(size);
        for (std::size_t i = 0; i < size; ++i) idx[i] = i;
        for (std::size_t i = 0; i < n && i + 1 < size; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(below(size - i));
            std::swap(idx[i], idx[j]);
        }
        idx.resize(n);
        return idx;
    }

private:
    std::mt19937_64 engine_;
};

/// splitmix64 mix for deriving independent child seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                                 std::uint64_t c) {
    return mix_seed(mix_seed(mix_seed(seed, a), b), c);
}

} // namespace depmet
