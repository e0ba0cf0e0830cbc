#include "kmopt/init.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "kmopt/algorithms.hpp"

namespace kmopt {

namespace {

void require_k(const Dataset& data, int k) {
    if (k < 1 || static_cast<std::size_t>(k) > data.size()) {
        throw std::invalid_argument("initializer: k must be in [1, n]");
    }
}

// Nearest provisional center for every point, ties to the lowest center
// index; centers are given as point indices.
std::vector<int> assign_to_centers(const Dataset& data, const std::vector<std::size_t>& centers) {
    std::vector<int> assignment(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto x = data.point(i);
        double best = std::numeric_limits<double>::infinity();
        int best_c = 0;
        for (std::size_t c = 0; c < centers.size(); ++c) {
            const double dist2 = squared_distance(x, data.point(centers[c]));
            if (dist2 < best) {
                best = dist2;
                best_c = static_cast<int>(c);
            }
        }
        assignment[i] = best_c;
    }
    return assignment;
}

ClusteringState state_with_repair(const Dataset& data, int k, std::vector<int> assignment) {
    ClusteringState state(data, k, std::move(assignment));
    repair_empty_clusters(data, state);
    return state;
}

}  // namespace

ClusteringState init_random_assignment(const Dataset& data, int k, RandomStream rng) {
    require_k(data, k);
    const std::size_t n = data.size();
    std::vector<int> assignment(n);
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<std::size_t> sizes(static_cast<std::size_t>(k), 0);
        for (std::size_t i = 0; i < n; ++i) {
            assignment[i] = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(k)));
            ++sizes[static_cast<std::size_t>(assignment[i])];
        }
        bool complete = true;
        for (std::size_t s : sizes) complete = complete && s > 0;
        if (complete) return {data, k, std::move(assignment)};
    }
    for (std::size_t i = 0; i < n; ++i) assignment[i] = static_cast<int>(i % static_cast<std::size_t>(k));
    return {data, k, std::move(assignment)};
}

ClusteringState init_random_centroids(const Dataset& data, int k, RandomStream rng) {
    require_k(data, k);
    const std::size_t n = data.size();
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    // Partial Fisher-Yates: the first k entries become the sample.
    for (std::size_t i = 0; i < static_cast<std::size_t>(k); ++i) {
        const auto j = i + static_cast<std::size_t>(rng.next_below(n - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(static_cast<std::size_t>(k));
    return state_with_repair(data, k, assign_to_centers(data, pool));
}

ClusteringState init_kmeans_pp(const Dataset& data, int k, RandomStream rng) {
    require_k(data, k);
    const std::size_t n = data.size();
    std::vector<std::size_t> centers;
    centers.reserve(static_cast<std::size_t>(k));
    centers.push_back(rng.next_below(n));

    std::vector<double> min_dist2(n);
    for (std::size_t i = 0; i < n; ++i) {
        min_dist2[i] = squared_distance(data.point(i), data.point(centers[0]));
    }
    while (centers.size() < static_cast<std::size_t>(k)) {
        double total = 0.0;
        for (double v : min_dist2) total += v;
        std::size_t pick;
        if (total <= 0.0) {
            pick = rng.next_below(n);
        } else {
            const double u = rng.next_unit() * total;
            double acc = 0.0;
            pick = n - 1;
            for (std::size_t i = 0; i < n; ++i) {
                acc += min_dist2[i];
                if (u < acc) {
                    pick = i;
                    break;
                }
            }
        }
        centers.push_back(pick);
        for (std::size_t i = 0; i < n; ++i) {
            const double dist2 = squared_distance(data.point(i), data.point(pick));
            if (dist2 < min_dist2[i]) min_dist2[i] = dist2;
        }
    }
    return state_with_repair(data, k, assign_to_centers(data, centers));
}

ClusteringState make_initial_state(const Dataset& data, const InitSpec& spec) {
    RandomStream rng(spec.rng_seed);
    switch (spec.kind) {
        case InitKind::random_assignment: return init_random_assignment(data, spec.k, rng);
        case InitKind::random_centroids: return init_random_centroids(data, spec.k, rng);
        case InitKind::kmeans_pp: return init_kmeans_pp(data, spec.k, rng);
    }
    throw std::logic_error("make_initial_state: unknown init kind");
}

}  // namespace kmopt
