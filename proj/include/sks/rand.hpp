// Seeded hashing used everywhere instead of stored random tables: every
// random quantity is a pure function of (seed, key), so sketches replay
// and merge deterministically. The mixer is a double splitmix64-style
// finalizer, good enough to stand in for the limited-independence
// families the analyses ask for.
#pragma once

#include <cstdint>

namespace sks {

inline uint64_t mix_rounds(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline uint64_t mix64(uint64_t seed, uint64_t key) {
    uint64_t z = mix_rounds(seed ^ (0x9e3779b97f4a7c15ULL * (key + 0x632be59bd9b4e019ULL)));
    return mix_rounds(z + seed);
}

inline uint64_t mix64(uint64_t seed, uint64_t k1, uint64_t k2) {
    return mix64(mix64(seed, k1), k2);
}

// short string tag -> 64-bit constant, for seed lineages
constexpr uint64_t tag(const char* s) {
    uint64_t h = 0xcbf29ce484222325ULL;
    while (*s) {
        h ^= (uint64_t)(unsigned char)*s++;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline uint64_t derive(uint64_t seed, uint64_t salt) { return mix64(seed, salt); }

struct HashFamily {
    enum class Kind : uint8_t { sign = 1, bucket = 2, uniform = 3 };

    uint64_t seed = 0;
    Kind kind = Kind::sign;
    uint32_t buckets = 0;

    static HashFamily sign_family(uint64_t seed);
    static HashFamily bucket_family(uint64_t seed, uint32_t buckets);
    static HashFamily uniform_family(uint64_t seed);
};

// +1 or -1
int sign(const HashFamily& f, uint64_t key);
// uniform in [0, f.buckets)
uint32_t bucket(const HashFamily& f, uint64_t key);
// uniform on the grid {1,...,2^30} / 2^30, so values lie in (0, 1] and
// are bounded away from zero
double uniform_scale(const HashFamily& f, uint64_t key);

// 64 independent sign bits for keys (key, block); bit c of the result is
// the sign of "column" 64*block + c. Used by sketches that need many
// signs per row.
uint64_t sign_block(const HashFamily& f, uint64_t key, uint64_t block);

// standard normal from two mixed uniforms (Box-Muller); deterministic in
// (seed, key), unlike std::normal_distribution
double gaussian(uint64_t seed, uint64_t key);

}  // namespace sks
