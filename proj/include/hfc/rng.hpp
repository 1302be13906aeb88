#pragma once

#include <cstdint>

namespace hfc::rng {

// Counter-based hashing (splitmix64 finalizer). Draws are keyed by
// (seed, stream, counter), so results never depend on thread count or
// evaluation order.
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline uint64_t hash2(uint64_t a, uint64_t b) { return splitmix64(splitmix64(a) ^ b); }
inline uint64_t hash3(uint64_t a, uint64_t b, uint64_t c) { return splitmix64(hash2(a, b) ^ c); }
inline uint64_t hash4(uint64_t a, uint64_t b, uint64_t c, uint64_t d) {
    return splitmix64(hash3(a, b, c) ^ d);
}

/// Uniform double in [0, 1) from a hash value.
inline double u01(uint64_t h) { return (double)(h >> 11) * 0x1.0p-53; }

} // namespace hfc::rng
