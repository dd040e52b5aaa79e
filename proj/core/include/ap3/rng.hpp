#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace ap3 {

// One master seed per run; per-module streams are derived by hashing a
// label into it, so parallel schedules cannot perturb each other.
inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::mt19937_64 make_stream(std::uint64_t seed, std::string_view label) {
    return std::mt19937_64(splitmix64(seed ^ fnv1a64(label)));
}

}  // namespace ap3
