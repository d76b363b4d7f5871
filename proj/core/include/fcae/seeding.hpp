#pragma once

#include <cstdint>

namespace fcae::seeding {

/// splitmix64 step; used to derive independent deterministic streams
/// (shuffle order, per-signal noise, per-layer compression) from one seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive(std::uint64_t seed, std::uint64_t tag) {
    return splitmix64(splitmix64(seed) ^ tag);
}

inline std::uint64_t derive(std::uint64_t seed, std::uint64_t tag_a, std::uint64_t tag_b) {
    return splitmix64(derive(seed, tag_a) ^ splitmix64(tag_b));
}

}  // namespace fcae::seeding
