#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "kmopt/init.hpp"
#include "kmopt/metrics.hpp"
#include "kmopt/synth.hpp"

using namespace kmopt;
using namespace kmopt::testing;

TEST_SUITE("init") {

TEST_CASE("k = 1 puts everything in cluster 0") {
    RandomStream rng(31);
    const auto data = random_dataset(rng, 9, 2);
    for (const auto& state : {init_random_assignment(data, 1, RandomStream(1)),
                              init_random_centroids(data, 1, RandomStream(2)),
                              init_kmeans_pp(data, 1, RandomStream(3))}) {
        CHECK(state.cluster_size(0) == 9);
    }
}

TEST_CASE("k = n yields all singletons") {
    RandomStream rng(32);
    const auto data = random_dataset(rng, 7, 2);
    const auto state = init_random_assignment(data, 7, RandomStream(4));
    for (int c = 0; c < 7; ++c) CHECK(state.cluster_size(c) == 1);

    const auto forgy = init_random_centroids(data, 7, RandomStream(5));
    CHECK(total_loss(data, forgy) == 0.0);
}

TEST_CASE("k > n is rejected") {
    RandomStream rng(33);
    const auto data = random_dataset(rng, 3, 2);
    CHECK_THROWS_AS(init_random_assignment(data, 4, RandomStream(1)), std::invalid_argument);
    CHECK_THROWS_AS(init_random_centroids(data, 4, RandomStream(1)), std::invalid_argument);
    CHECK_THROWS_AS(init_kmeans_pp(data, 4, RandomStream(1)), std::invalid_argument);
}

TEST_CASE("identical seeds reproduce identical states") {
    RandomStream rng(34);
    const auto data = random_dataset(rng, 25, 3);
    for (int kind = 0; kind < 3; ++kind) {
        const InitSpec spec{static_cast<InitKind>(kind), 4, 987};
        const auto a = make_initial_state(data, spec);
        const auto b = make_initial_state(data, spec);
        CHECK(a.assignment() == b.assignment());
    }
}

TEST_CASE("all initializers satisfy the state invariants with no empty cluster") {
    RandomStream rng(35);
    for (int trial = 0; trial < 30; ++trial) {
        const auto n = 5 + rng.next_below(40);
        const int k = static_cast<int>(1 + rng.next_below(std::min<std::uint64_t>(n, 8)));
        const auto data = random_dataset(rng, n, 1 + rng.next_below(4));
        for (int kind = 0; kind < 3; ++kind) {
            const auto state = make_initial_state(
                data, {static_cast<InitKind>(kind), k, 100 + static_cast<std::uint64_t>(trial)});
            CHECK(state_is_consistent(data, state));
            for (int c = 0; c < k; ++c) CHECK(state.cluster_size(c) > 0);
        }
    }
}

TEST_CASE("duplicate-heavy data still initializes cleanly") {
    // 6 copies of the same point: provisional centers collide and the
    // repair path has to fill the losing clusters.
    const Dataset data("dups", 2, {1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0});
    for (int kind = 0; kind < 3; ++kind) {
        const auto state = make_initial_state(data, {static_cast<InitKind>(kind), 3, 5});
        CHECK(state_is_consistent(data, state));
        for (int c = 0; c < 3; ++c) CHECK(state.cluster_size(c) > 0);
        CHECK(total_loss(data, state) == 0.0);
    }
}

TEST_CASE("random assignment sizes follow the multinomial law") {
    RandomStream rng(36);
    const auto data = random_dataset(rng, 1000, 1);
    const int k = 10;
    const int seeds = 10000;
    const double expected = 1000.0 / k;

    // Aggregate counts over all seeds: chi^2 with 9 degrees of freedom,
    // 1% critical value 21.666. Per-seed Pearson statistics summed over
    // 10000 seeds: chi^2 with 90000 dof, two-sided 1% interval
    // [88910.93, 91096.59].
    std::vector<double> totals(k, 0.0);
    double dispersion = 0.0;
    for (int seed = 0; seed < seeds; ++seed) {
        const auto state =
            init_random_assignment(data, k, RandomStream(static_cast<std::uint64_t>(seed)));
        for (int c = 0; c < k; ++c) {
            const auto size = static_cast<double>(state.cluster_size(c));
            totals[c] += size;
            const double diff = size - expected;
            dispersion += diff * diff / expected;
        }
    }
    const double grand_expected = expected * seeds;
    double aggregate = 0.0;
    for (int c = 0; c < k; ++c) {
        const double diff = totals[c] - grand_expected;
        aggregate += diff * diff / grand_expected;
    }
    CHECK(aggregate <= 21.666);
    CHECK(dispersion >= 88910.93);
    CHECK(dispersion <= 91096.59);
}

TEST_CASE("kmeans++ on two points always separates them") {
    const Dataset data("two", 1, {0.0, 5.0});
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto state = init_kmeans_pp(data, 2, RandomStream(seed));
        CHECK(state.cluster_size(0) == 1);
        CHECK(state.cluster_size(1) == 1);
        CHECK(state.cluster_of(0) != state.cluster_of(1));
    }
}

TEST_CASE("kmeans++ hits distinct blobs far more often than uniform seeding") {
    // Five tight components, 20 points each, centers 70+ apart with sigma
    // 0.1: a seeding lands "correctly" exactly when its five centers fall in
    // five distinct blobs, i.e. the induced partition matches the ground
    // truth (NMI 1).
    const double centers[5][2] = {{0, 0}, {100, 0}, {0, 100}, {100, 100}, {50, 50}};
    RandomStream gen(424242);
    std::vector<double> values;
    std::vector<int> truth;
    for (int blob = 0; blob < 5; ++blob) {
        for (int i = 0; i < 20; ++i) {
            values.push_back(centers[blob][0] + 0.1 * gen.next_gaussian());
            values.push_back(centers[blob][1] + 0.1 * gen.next_gaussian());
            truth.push_back(blob);
        }
    }
    const Dataset blobs("blobs", 2, std::move(values), std::move(truth));

    int pp_exact = 0;
    int uniform_exact = 0;
    const int draws = 1000;
    for (int seed = 0; seed < draws; ++seed) {
        const auto pp = init_kmeans_pp(blobs, 5, RandomStream(static_cast<std::uint64_t>(seed)));
        if (nmi(pp.assignment(), *blobs.labels()) == 1.0) ++pp_exact;
        const auto uni =
            init_random_centroids(blobs, 5, RandomStream(static_cast<std::uint64_t>(seed)));
        if (nmi(uni.assignment(), *blobs.labels()) == 1.0) ++uniform_exact;
    }
    CHECK(pp_exact >= 950);          // overwhelming majority
    CHECK(uniform_exact <= 200);     // uniform baseline misses blobs routinely
    CHECK(pp_exact > uniform_exact);
}

}  // TEST_SUITE
