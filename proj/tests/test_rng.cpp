#include <doctest.h>

#include <array>
#include <cmath>
#include <map>

#include "kmopt/rng.hpp"

using kmopt::RandomStream;

TEST_SUITE("rng") {

TEST_CASE("derive is deterministic") {
    RandomStream root(42);
    auto a = root.derive({1, 2});
    auto b = root.derive({1, 2});
    for (int i = 0; i < 64; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("distinct labels give distinct streams") {
    RandomStream root(42);
    auto a = root.derive({1, 2});
    auto b = root.derive({1, 3});
    bool differ = false;
    for (int i = 0; i < 64 && !differ; ++i) differ = a.next_u64() != b.next_u64();
    CHECK(differ);
}

TEST_CASE("derivation is path-sensitive") {
    RandomStream root(42);
    auto nested = root.derive({1}).derive({2});
    auto flat = root.derive({1, 2});
    CHECK(nested.seed() != flat.seed());
    CHECK(nested.next_u64() != flat.next_u64());
}

TEST_CASE("audit origin survives derivation") {
    RandomStream root(99);
    auto child = root.derive({3}).derive({7, 8});
    CHECK(child.master_seed() == 99);
    REQUIRE(child.path().size() == 3);
    CHECK(child.path()[0] == 3);
    CHECK(child.path()[2] == 8);
}

TEST_CASE("permutation of one element") {
    RandomStream rng(7);
    const auto p = rng.permutation(1);
    REQUIRE(p.size() == 1);
    CHECK(p[0] == 0);
}

TEST_CASE("permutation replays identically") {
    const auto p1 = RandomStream(123).permutation(50);
    const auto p2 = RandomStream(123).permutation(50);
    CHECK(p1 == p2);
}

TEST_CASE("permutations of three elements are uniform") {
    // 60000 draws over the 6 permutations; each count must stay within
    // 3 sigma = 274 of the expected 10000.
    RandomStream rng(2026);
    std::map<std::array<std::uint32_t, 3>, int> counts;
    for (int i = 0; i < 60000; ++i) {
        const auto p = rng.permutation(3);
        ++counts[{p[0], p[1], p[2]}];
    }
    REQUIRE(counts.size() == 6);
    for (const auto& [perm, count] : counts) {
        CHECK(std::abs(count - 10000) <= 274);
    }
}

TEST_CASE("unit draws stay in [0,1)") {
    RandomStream rng(5);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.next_unit();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("next_below respects the bound") {
    RandomStream rng(6);
    for (int i = 0; i < 10000; ++i) CHECK(rng.next_below(13) < 13);
    CHECK_THROWS_AS(rng.next_below(0), std::invalid_argument);
}

TEST_CASE("sibling streams never interleave state") {
    RandomStream root(55);
    auto a1 = root.derive({1});
    auto b1 = root.derive({2});
    // interleaved consumption
    std::vector<std::uint64_t> a_inter, b_inter;
    for (int i = 0; i < 32; ++i) {
        a_inter.push_back(a1.next_u64());
        b_inter.push_back(b1.next_u64());
    }
    // separate consumption
    auto a2 = root.derive({1});
    auto b2 = root.derive({2});
    for (int i = 0; i < 32; ++i) CHECK(a2.next_u64() == a_inter[i]);
    for (int i = 0; i < 32; ++i) CHECK(b2.next_u64() == b_inter[i]);
}

TEST_CASE("gaussian moments are sane") {
    RandomStream rng(8);
    const int n = 200000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double g = rng.next_gaussian();
        sum += g;
        sq += g * g;
    }
    const double mean = sum / n;
    const double var = sq / n - mean * mean;
    CHECK(std::abs(mean) < 0.01);
    CHECK(std::abs(var - 1.0) < 0.02);
}

}  // TEST_SUITE
