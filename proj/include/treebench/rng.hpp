#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace treebench {

// splitmix64 finalizer. Stable across platforms, used for seed derivation
// and for the hashed correct-action scheme in the chain environments.
inline uint64_t mix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline uint64_t hash_combine(uint64_t seed, uint64_t value) {
    return mix64(seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2)));
}

inline uint64_t hash_str(std::string_view s) {
    // FNV-1a 64
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// mt19937_64 wrapper with portable integer/real mappings. The standard
// distributions are implementation-defined, so we map raw draws ourselves
// to keep results identical across toolchains.
class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(mix64(seed)) {}

    // uniform in [0, n), unbiased via rejection
    uint32_t uniform_int(uint32_t n) {
        if (n <= 1) return 0;
        const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return static_cast<uint32_t>(x % n);
    }

    // uniform in [0, 1)
    double uniform01() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    // uniform in [lo, hi)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

private:
    std::mt19937_64 gen_;
};

}  // namespace treebench
