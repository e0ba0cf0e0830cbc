#ifndef KMOPT_INIT_HPP
#define KMOPT_INIT_HPP

#include <cstdint>

#include "kmopt/core.hpp"
#include "kmopt/rng.hpp"

namespace kmopt {

enum class InitKind { random_assignment, random_centroids, kmeans_pp };

struct InitSpec {
    InitKind kind = InitKind::random_assignment;
    int k = 1;
    std::uint64_t rng_seed = 0;
};

// Every initializer is a pure function of (data, k, stream) and returns a
// state with no empty cluster. Streams are taken by value so the caller's
// stream is never consumed.

// Assigns each point a uniform cluster; redraws entirely (up to 64 attempts)
// while some cluster is empty, then falls back to round-robin.
ClusteringState init_random_assignment(const Dataset& data, int k, RandomStream rng);

// Samples k distinct points as provisional centers and assigns every point
// to the nearest one (ties to the lowest index).
ClusteringState init_random_centroids(const Dataset& data, int k, RandomStream rng);

// k-means++ seeding: first center uniform, each next center drawn with
// probability proportional to squared distance to the nearest chosen center.
// When the total squared distance hits zero, remaining centers are drawn
// uniformly among the points.
ClusteringState init_kmeans_pp(const Dataset& data, int k, RandomStream rng);

ClusteringState make_initial_state(const Dataset& data, const InitSpec& spec);

}  // namespace kmopt

#endif  // KMOPT_INIT_HPP
