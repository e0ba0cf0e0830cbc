#ifndef KMOPT_ALGORITHMS_HPP
#define KMOPT_ALGORITHMS_HPP

#include <cstdint>
#include <span>

#include "kmopt/core.hpp"

namespace kmopt {

// Shared configuration of the single-point local search. The schedule picks
// the optimizer: constant_one is Hartigan's method, linear_decay is the
// annealed variant. finish_with_hartigan appends constant-one epochs after a
// decaying schedule so the returned state sits at a Hartigan-stable point;
// it has no effect on constant_one runs. Each phase is bounded by
// schedule.max_iterations epochs.
struct LocalSearchConfig {
    ScheduleSpec schedule;
    bool finish_with_hartigan = true;
    std::uint64_t rng_seed = 0;
};

LocalSearchConfig hartigan_config(int n_iter, std::uint64_t seed);
LocalSearchConfig smartigan_config(int n_iter, std::uint64_t seed,
                                   bool finish_with_hartigan = true);

// One batch pass of Lloyd's method: assign every point to its nearest
// non-empty-cluster centroid (ties to the lowest index), rebuild the sums,
// then refill any cluster that came out empty. Returns the number of
// reassignments, repairs included.
std::size_t lloyd_step(const Dataset& data, ClusteringState& state);

// Runs lloyd_step until a pass moves nothing or max_iterations passes ran.
RunReport run_lloyd(const Dataset& data, ClusteringState& state, int max_iterations);

// One pass over `order`: each point whose cluster is not a singleton moves to
// the cluster of cheapest insertion when that cost is within `multiplier`
// times its removal gain (ties to the lowest cluster index). Centroids are
// updated immediately after each accepted move. Returns the move count.
std::size_t local_search_epoch(const Dataset& data, ClusteringState& state,
                               double multiplier, std::span<const std::uint32_t> order);

// The unified Hartigan / annealed-threshold driver: epochs of
// local_search_epoch over fresh seeded permutations until one makes zero
// moves or the horizon is hit, then optional constant-one finishing epochs.
RunReport run_local_search(const Dataset& data, ClusteringState& state,
                           const LocalSearchConfig& config);

// True iff every point is assigned to a nearest non-empty cluster centroid
// (ties acceptable in any direction).
bool is_lloyd_stable(const Dataset& data, const ClusteringState& state);

// True iff no point of a non-singleton cluster has a target whose insertion
// cost is <= its removal gain. Deterministic full scan.
bool is_hartigan_stable(const Dataset& data, const ClusteringState& state);

// Moves the point farthest from its own centroid (among clusters of size
// >= 2, ties to the lowest point index) into each empty cluster. Returns the
// number of repairs.
std::size_t repair_empty_clusters(const Dataset& data, ClusteringState& state);

}  // namespace kmopt

#endif  // KMOPT_ALGORITHMS_HPP
