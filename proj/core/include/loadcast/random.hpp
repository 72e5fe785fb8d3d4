#pragma once

#include <cstdint>
#include <random>

namespace loadcast {

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Independent deterministic stream for (seed, index); results do not
/// depend on the order in which streams are consumed.
inline std::mt19937_64 keyed_stream(std::uint64_t seed, std::uint64_t index) {
    return std::mt19937_64{mix64(mix64(seed) ^ mix64(index + 0x632be59bd9b4e019ULL))};
}

}  // namespace loadcast
