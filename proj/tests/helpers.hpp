#ifndef KMOPT_TESTS_HELPERS_HPP
#define KMOPT_TESTS_HELPERS_HPP

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "kmopt/core.hpp"
#include "kmopt/rng.hpp"

namespace kmopt::testing {

// Uniform random dataset in [0,10]^d, without labels.
inline Dataset random_dataset(RandomStream& rng, std::size_t n, std::size_t d) {
    std::vector<double> values(n * d);
    for (double& v : values) v = rng.next_unit() * 10.0;
    return {"random", d, std::move(values)};
}

// Random assignment covering all k clusters (round-robin base plus shuffle).
inline std::vector<int> covering_assignment(RandomStream& rng, std::size_t n, int k) {
    std::vector<int> assignment(n);
    for (std::size_t i = 0; i < n; ++i) assignment[i] = static_cast<int>(i % static_cast<std::size_t>(k));
    const auto perm = rng.permutation(static_cast<std::uint32_t>(n));
    std::vector<int> shuffled(n);
    for (std::size_t i = 0; i < n; ++i) shuffled[i] = assignment[perm[i]];
    return shuffled;
}

// Independent phi oracle: recomputes the cluster mean in a separate pass and
// sums squared distances, using only the assignment vector.
inline double phi_bruteforce(const Dataset& data, std::span<const int> assignment, int cluster) {
    const std::size_t d = data.dim();
    std::vector<double> mean(d, 0.0);
    std::size_t count = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (assignment[i] != cluster) continue;
        ++count;
        const auto x = data.point(i);
        for (std::size_t j = 0; j < d; ++j) mean[j] += x[j];
    }
    if (count == 0) return 0.0;
    for (double& v : mean) v /= static_cast<double>(count);
    double s = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (assignment[i] != cluster) continue;
        const auto x = data.point(i);
        for (std::size_t j = 0; j < d; ++j) {
            const double diff = x[j] - mean[j];
            s += diff * diff;
        }
    }
    return s;
}

// Loss oracle built on phi_bruteforce.
inline double loss_bruteforce(const Dataset& data, std::span<const int> assignment, int k) {
    double s = 0.0;
    for (int c = 0; c < k; ++c) s += phi_bruteforce(data, assignment, c);
    return s;
}

inline bool close_rel(double a, double b, double rel_tol, double abs_floor = 1e-12) {
    const double scale = std::max({std::abs(a), std::abs(b), 1.0});
    return std::abs(a - b) <= std::max(rel_tol * scale, abs_floor);
}

}  // namespace kmopt::testing

#endif  // KMOPT_TESTS_HELPERS_HPP
