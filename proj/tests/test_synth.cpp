#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "kmopt/synth.hpp"

using namespace kmopt;

TEST_SUITE("synth") {

TEST_CASE("single-component sample obeys the law of large numbers") {
    MixtureSpec spec;
    spec.regime = MixtureRegime::small_distance;
    spec.d = 2;
    spec.k_true = 1;
    spec.n = 100000;
    spec.rng_seed = 99;
    const auto data = generate(spec);
    REQUIRE(data.size() == spec.n);

    // The lone center is unobservable directly, but with variance 0.3 the
    // sample mean pins it to within 0.02 per coordinate; compare moments.
    std::vector<double> mean(2, 0.0);
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto x = data.point(i);
        for (std::size_t j = 0; j < 2; ++j) mean[j] += x[j];
    }
    for (double& v : mean) v /= static_cast<double>(data.size());

    std::vector<double> var(2, 0.0);
    double cov = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto x = data.point(i);
        const double dx = x[0] - mean[0];
        const double dy = x[1] - mean[1];
        var[0] += dx * dx;
        var[1] += dy * dy;
        cov += dx * dy;
    }
    for (double& v : var) v /= static_cast<double>(data.size());
    cov /= static_cast<double>(data.size());

    for (std::size_t j = 0; j < 2; ++j) {
        CHECK(mean[j] >= -0.02);       // center drawn from [0,3]
        CHECK(mean[j] <= 3.02);
        CHECK(std::abs(var[j] - 0.3) <= 0.009);  // within 3%
    }
    // Off-diagonal bounded by 5 sigma^2 / sqrt(n).
    CHECK(std::abs(cov) <= 5.0 * 0.3 / std::sqrt(static_cast<double>(data.size())));
}

TEST_CASE("large regime uses variance 0.1") {
    MixtureSpec spec;
    spec.regime = MixtureRegime::large_distance;
    spec.d = 3;
    spec.k_true = 1;
    spec.n = 100000;
    spec.rng_seed = 7;
    const auto data = generate(spec);
    for (std::size_t j = 0; j < spec.d; ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < data.size(); ++i) mean += data.point(i)[j];
        mean /= static_cast<double>(data.size());
        CHECK(mean >= -0.02);
        CHECK(mean <= 5.02);  // centers from [0,5]
        double var = 0.0;
        for (std::size_t i = 0; i < data.size(); ++i) {
            const double diff = data.point(i)[j] - mean;
            var += diff * diff;
        }
        var /= static_cast<double>(data.size());
        CHECK(std::abs(var - 0.1) <= 0.003);
    }
}

TEST_CASE("a single point generates") {
    MixtureSpec spec;
    spec.k_true = 3;
    spec.n = 1;
    spec.d = 2;
    spec.rng_seed = 1;
    const auto data = generate(spec);
    CHECK(data.size() == 1);
    REQUIRE(data.labels());
    CHECK((*data.labels())[0] >= 0);
    CHECK((*data.labels())[0] < 3);
}

TEST_CASE("generation is bit-identical per seed") {
    MixtureSpec spec;
    spec.d = 4;
    spec.k_true = 6;
    spec.n = 300;
    spec.rng_seed = 12345;
    const auto a = generate(spec);
    const auto b = generate(spec);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) CHECK(a.point(i)[j] == b.point(i)[j]);
    }
    CHECK(*a.labels() == *b.labels());

    spec.rng_seed = 54321;
    const auto c = generate(spec);
    bool differs = false;
    for (std::size_t i = 0; i < a.size() && !differs; ++i) {
        differs = a.point(i)[0] != c.point(i)[0];
    }
    CHECK(differs);
}

TEST_CASE("component labels are uniform-multinomial") {
    MixtureSpec spec;
    spec.d = 1;
    spec.k_true = 4;
    spec.n = 20000;
    spec.rng_seed = 31337;
    const auto data = generate(spec);
    std::vector<double> counts(4, 0.0);
    for (int label : *data.labels()) counts[static_cast<std::size_t>(label)] += 1.0;
    const double expected = 20000.0 / 4.0;
    double chi2 = 0.0;
    for (double c : counts) {
        const double diff = c - expected;
        chi2 += diff * diff / expected;
    }
    CHECK(chi2 <= 11.345);  // chi^2 critical value, 3 dof, 1% level
}

TEST_CASE("invalid specs are rejected") {
    MixtureSpec spec;
    spec.k_true = 0;
    CHECK_THROWS_AS(generate(spec), std::invalid_argument);
    spec.k_true = 1;
    spec.n = 0;
    CHECK_THROWS_AS(generate(spec), std::invalid_argument);
}

}  // TEST_SUITE
