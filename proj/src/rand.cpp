#include "sks/rand.hpp"

#include <cmath>
#include <stdexcept>

namespace sks {

namespace {
constexpr uint64_t kSignTag = tag("family.sign");
constexpr uint64_t kBucketTag = tag("family.bucket");
constexpr uint64_t kUniformTag = tag("family.uniform");
}  // namespace

HashFamily HashFamily::sign_family(uint64_t seed) {
    HashFamily f;
    f.seed = mix64(seed, kSignTag);
    f.kind = Kind::sign;
    return f;
}

HashFamily HashFamily::bucket_family(uint64_t seed, uint32_t buckets) {
    if (buckets == 0) throw std::invalid_argument("bucket_family: buckets must be >= 1");
    HashFamily f;
    f.seed = mix64(seed, kBucketTag);
    f.kind = Kind::bucket;
    f.buckets = buckets;
    return f;
}

HashFamily HashFamily::uniform_family(uint64_t seed) {
    HashFamily f;
    f.seed = mix64(seed, kUniformTag);
    f.kind = Kind::uniform;
    return f;
}

int sign(const HashFamily& f, uint64_t key) {
    if (f.kind != HashFamily::Kind::sign)
        throw std::logic_error("sign queried on a non-sign family");
    return (mix64(f.seed, key) >> 63) ? 1 : -1;
}

uint32_t bucket(const HashFamily& f, uint64_t key) {
    if (f.kind != HashFamily::Kind::bucket)
        throw std::logic_error("bucket queried on a non-bucket family");
    // Lemire reduction: unbiased enough for 64 fresh bits per key
    return (uint32_t)(((unsigned __int128)mix64(f.seed, key) * f.buckets) >> 64);
}

double uniform_scale(const HashFamily& f, uint64_t key) {
    if (f.kind != HashFamily::Kind::uniform)
        throw std::logic_error("uniform_scale queried on a non-uniform family");
    uint64_t top = mix64(f.seed, key) >> 34;  // 30 bits
    return (double)(top + 1) * 0x1p-30;
}

uint64_t sign_block(const HashFamily& f, uint64_t key, uint64_t block) {
    if (f.kind != HashFamily::Kind::sign)
        throw std::logic_error("sign_block queried on a non-sign family");
    return mix64(f.seed, key, block);
}

double gaussian(uint64_t seed, uint64_t key) {
    uint64_t w1 = mix64(seed, key, tag("gauss.u1"));
    uint64_t w2 = mix64(seed, key, tag("gauss.u2"));
    double u1 = (double)((w1 >> 11) + 1) * 0x1p-53;
    double u2 = (double)(w2 >> 11) * 0x1p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace sks
