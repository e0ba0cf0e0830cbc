#include <doctest.h>

#include <cmath>

#include "kmopt/metrics.hpp"
#include "kmopt/rng.hpp"

using namespace kmopt;

namespace {

std::vector<int> random_labels(RandomStream& rng, std::size_t n, int k) {
    std::vector<int> labels(n);
    for (auto& v : labels) v = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(k)));
    return labels;
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("identical labelings score 1 up to relabeling") {
    const std::vector<int> truth{0, 0, 1, 1, 2, 2};
    const std::vector<int> renamed{7, 7, 3, 3, 5, 5};
    CHECK(nmi(truth, truth) == 1.0);
    CHECK(nmi(renamed, truth) == 1.0);
}

TEST_CASE("a constant prediction carries no information") {
    const std::vector<int> pred{4, 4, 4, 4};
    const std::vector<int> truth{0, 1, 0, 1};
    CHECK(nmi(pred, truth) == 0.0);
    // Both constant: compatible degenerate labelings.
    CHECK(nmi(pred, pred) == 1.0);
}

TEST_CASE("independent labelings score 0") {
    // 2x2 contingency table with all cells equal: I(U;V) = 0 by hand.
    const std::vector<int> pred{0, 0, 1, 1};
    const std::vector<int> truth{0, 1, 0, 1};
    CHECK(nmi(pred, truth) == 0.0);
}

TEST_CASE("contingency table shape and totals") {
    const std::vector<int> a{0, 0, 1, 1, 1};
    const std::vector<int> b{2, 2, 2, 9, 9};
    const auto table = ContingencyTable::from_labels(a, b);
    CHECK(table.rows == 2);
    CHECK(table.cols == 2);
    CHECK(table.n == 5);
    CHECK(table.at(0, 0) == 2);
    CHECK(table.at(1, 0) == 1);
    CHECK(table.at(1, 1) == 2);
    CHECK_THROWS_AS(ContingencyTable::from_labels(a, std::vector<int>{1}),
                    std::invalid_argument);
}

TEST_CASE("nmi is symmetric and relabel-invariant, bitwise") {
    RandomStream rng(41);
    for (int trial = 0; trial < 200; ++trial) {
        const auto n = 2 + rng.next_below(40);
        auto a = random_labels(rng, n, 2 + static_cast<int>(rng.next_below(4)));
        auto b = random_labels(rng, n, 2 + static_cast<int>(rng.next_below(4)));

        const double forward = nmi(a, b);
        CHECK(forward == nmi(b, a));

        // Apply a bijection to a's label names.
        auto renamed = a;
        for (auto& v : renamed) v = 1000 - 7 * v;
        CHECK(nmi(renamed, b) == forward);

        CHECK(forward >= 0.0);
        CHECK(forward <= 1.0 + 1e-12);
    }
}

TEST_CASE("geometric normalization stays in range") {
    RandomStream rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        const auto n = 4 + rng.next_below(30);
        const auto a = random_labels(rng, n, 3);
        const auto b = random_labels(rng, n, 3);
        const double g = nmi(a, b, NmiNormalization::geometric_mean);
        CHECK(g >= 0.0);
        CHECK(g <= 1.0 + 1e-12);
    }
}

TEST_CASE("percent difference basics") {
    CHECK(percent_difference(100.0, 95.0) == doctest::Approx(-5.0).epsilon(1e-12));
    CHECK(percent_difference(42.0, 42.0) == 0.0);
    // Two table entries at k = 20: 17.38 against 16.76 is about -3.57%.
    CHECK(percent_difference(17.38, 16.76) == doctest::Approx(-3.5673).epsilon(1e-4));
    CHECK(std::isnan(percent_difference(0.0, 5.0)));
    CHECK(std::isnan(percent_difference(-1.0, 5.0)));
}

}  // TEST_SUITE
