#pragma once

#include <cstdint>
#include <random>

namespace fracent {

// mt19937_64 with a platform-independent mapping to (0, 1)
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // open interval: never returns 0 or 1
    double uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }
    std::uint64_t bits() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

// splitmix64 finaliser; derives independent streams from (seed, a, b)
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a = 0, std::uint64_t b = 0) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (a + 1) + 0xbf58476d1ce4e5b9ULL * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace fracent
