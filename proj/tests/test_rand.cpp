#include "doctest.h"
#include "helpers.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "sks/rand.hpp"

using namespace sks;

TEST_SUITE("rand") {

TEST_CASE("mix64 and tag are stable across calls") {
    uint64_t a = mix64(0x1234, 5);
    CHECK(a == mix64(0x1234, 5));
    CHECK(mix64(0x1234, 5, 6) == mix64(0x1234, 5, 6));
    CHECK(a != mix64(0x1234, 6));
    constexpr uint64_t t1 = tag("lp.fhat");
    constexpr uint64_t t2 = tag("lp.shat");
    static_assert(t1 != t2);
    CHECK(tag("lp.fhat") == t1);
}

TEST_CASE("sign outputs are in {-1,+1}, deterministic, near zero mean") {
    auto f = HashFamily::sign_family(0xA11CE);
    long long sum = 0;
    for (uint64_t k = 0; k < 100000; ++k) {
        int s = sign(f, k);
        CHECK((s == 1 || s == -1));
        CHECK(s == sign(f, k));
        sum += s;
    }
    double mean = (double)sum / 100000.0;
    CHECK(mean >= -0.02);
    CHECK(mean <= 0.02);
}

TEST_CASE("distinct sign seeds disagree often") {
    auto f = HashFamily::sign_family(1);
    auto g = HashFamily::sign_family(2);
    int disagree = 0;
    for (uint64_t k = 0; k < 10000; ++k)
        if (sign(f, k) != sign(g, k)) ++disagree;
    CHECK(disagree >= 4000);
}

TEST_CASE("bucket family ranges and loads") {
    auto one = HashFamily::bucket_family(0xB0B, 1);
    for (uint64_t k = 0; k < 64; ++k) CHECK(bucket(one, k) == 0);

    const int b = 16;
    const int total = 100000;
    auto f = HashFamily::bucket_family(0xB0B, b);
    std::vector<int> load(b, 0);
    for (uint64_t k = 0; k < (uint64_t)total; ++k) {
        int c = bucket(f, k);
        REQUIRE(c >= 0);
        REQUIRE(c < b);
        CHECK(c == bucket(f, k));
        ++load[c];
    }
    double expect = (double)total / b;
    double sigma = std::sqrt(expect * (1.0 - 1.0 / b));
    for (int c = 0; c < b; ++c)
        CHECK(std::fabs(load[c] - expect) <= 3.0 * sigma);
}

TEST_CASE("bucket family rejects zero buckets") {
    CHECK_THROWS_AS(HashFamily::bucket_family(1, 0), std::invalid_argument);
}

TEST_CASE("uniform scales live in (0,1] with mean one half") {
    auto f = HashFamily::uniform_family(0x5CA1E);
    const double floor = std::ldexp(1.0, -30);
    double sum = 0.0;
    for (uint64_t k = 0; k < 100000; ++k) {
        double u = uniform_scale(f, k);
        CHECK(u > 0.0);
        CHECK(u <= 1.0);
        CHECK(u >= floor);
        CHECK(u == uniform_scale(f, k));
        sum += u;
    }
    double mean = sum / 100000.0;
    CHECK(mean >= 0.49);
    CHECK(mean <= 0.51);
}

TEST_CASE("querying a family with the wrong kind fails loudly") {
    auto s = HashFamily::sign_family(7);
    auto b = HashFamily::bucket_family(7, 8);
    auto u = HashFamily::uniform_family(7);
    CHECK_THROWS_AS(bucket(s, 0), std::logic_error);
    CHECK_THROWS_AS(uniform_scale(b, 0), std::logic_error);
    CHECK_THROWS_AS(sign(u, 0), std::logic_error);
}

TEST_CASE("sign_block words are deterministic with balanced bits") {
    auto f = HashFamily::sign_family(0xB10C);
    long long ones = 0;
    for (uint64_t k = 0; k < 2000; ++k) {
        uint64_t a = sign_block(f, k, 0);
        uint64_t b = sign_block(f, k, 1);
        CHECK(a == sign_block(f, k, 0));
        CHECK(a != b);
        ones += __builtin_popcountll(a);
    }
    double frac = (double)ones / (2000.0 * 64.0);
    CHECK(frac >= 0.48);
    CHECK(frac <= 0.52);
    auto u = HashFamily::uniform_family(3);
    CHECK_THROWS_AS(sign_block(u, 0, 0), std::logic_error);
}

TEST_CASE("gaussian stream has plausible first two moments") {
    double sum = 0.0, sq = 0.0;
    const int n = 200000;
    for (int k = 0; k < n; ++k) {
        double g = gaussian(0x6A551A, (uint64_t)k);
        CHECK(g == gaussian(0x6A551A, (uint64_t)k));
        sum += g;
        sq += g * g;
    }
    double mean = sum / n;
    double var = sq / n - mean * mean;
    CHECK(std::fabs(mean) <= 0.02);
    CHECK(var == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("derive produces distinct child seeds") {
    uint64_t a = derive(0xFEED, tag("left"));
    uint64_t b = derive(0xFEED, tag("right"));
    CHECK(a != b);
    CHECK(a == derive(0xFEED, tag("left")));
}

}
