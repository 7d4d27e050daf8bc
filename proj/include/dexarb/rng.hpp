#pragma once

#include <cstdint>

namespace dexarb {

/// splitmix64 finalizer (Vigna); bijective on 64-bit words.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Portable 64-bit generator with a closed-form state update; identical
/// streams on every platform for a given seed.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ull;
        return mix64(state_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  private:
    std::uint64_t state_;
};

/// Stream-splitting rule used for all simulations: the substream for
/// (round, role) is seeded by mix64(master + GOLDEN * ((round << 2) | role)),
/// role 0/1 = player, role 2 = tie coin. Reproducible across platforms and
/// independent of the order substreams are consumed in.
inline SplitMix64 substream(std::uint64_t master_seed, std::uint64_t round,
                            std::uint64_t role) {
    const std::uint64_t key = (round << 2) | (role & 3u);
    return SplitMix64(mix64(master_seed + 0x9e3779b97f4a7c15ull * key));
}

}  // namespace dexarb
