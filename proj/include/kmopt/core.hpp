#ifndef KMOPT_CORE_HPP
#define KMOPT_CORE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace kmopt {

// Immutable collection of n points in R^d, optionally carrying ground-truth
// labels. All coordinates are finite doubles; the constructor rejects
// anything else.
class Dataset {
public:
    Dataset(std::string name, std::size_t dim, std::vector<double> values,
            std::optional<std::vector<int>> labels = std::nullopt);

    std::size_t size() const { return n_; }
    std::size_t dim() const { return dim_; }

    std::span<const double> point(std::size_t i) const {
        return {values_.data() + i * dim_, dim_};
    }

    const std::optional<std::vector<int>>& labels() const { return labels_; }
    const std::string& name() const { return name_; }

private:
    std::string name_;
    std::size_t dim_ = 0;
    std::size_t n_ = 0;
    std::vector<double> values_;  // row-major, n * dim
    std::optional<std::vector<int>> labels_;
};

// Mutable clustering of a dataset: assignment vector plus per-cluster sizes
// and coordinate sums. Centroids are stored as (sum, count) so single-point
// moves are exact additions and subtractions; division happens only when a
// centroid is read. A full recomputation runs every 10000 moves to keep
// accumulated float error below the 1e-9 consistency tolerance.
class ClusteringState {
public:
    ClusteringState(const Dataset& data, int k, std::vector<int> assignment);

    int k() const { return k_; }
    std::size_t n() const { return assignment_.size(); }
    std::size_t dim() const { return dim_; }

    int cluster_of(std::size_t point) const { return assignment_[point]; }
    std::size_t cluster_size(int cluster) const;

    std::span<const double> centroid_sum(int cluster) const;

    // Writes sum / size into out. Pre: the cluster is non-empty.
    void centroid(int cluster, std::span<double> out) const;

    const std::vector<int>& assignment() const { return assignment_; }

    // Reassigns `point` to `target` in O(d). Pre: target differs from the
    // point's current cluster.
    void move_point(const Dataset& data, std::size_t point, int target);

    // Replaces the whole assignment and rebuilds sizes and sums.
    void reassign_all(const Dataset& data, std::vector<int> assignment);

    // Recomputes sizes and centroid sums from the assignment.
    void rebuild(const Dataset& data);

private:
    void check_cluster(int cluster) const;

    int k_ = 0;
    std::size_t dim_ = 0;
    std::vector<int> assignment_;
    std::vector<std::size_t> sizes_;
    std::vector<double> centroid_sums_;  // row-major, k * dim
    std::uint64_t moves_since_rebuild_ = 0;
};

// Sum over clusters of squared distances from each member to its centroid.
// Empty clusters contribute zero.
double total_loss(const Dataset& data, const ClusteringState& state);

// One cluster's contribution to the loss; zero for an empty cluster.
double phi(const Dataset& data, const ClusteringState& state, int cluster);

// Exact loss decrease from inserting `point` into non-empty `target`:
// |C|/(|C|+1) * ||x - mu(C)||^2. Defined as 0 for an empty target, so a
// vacant cluster is always the cheapest destination and gets refilled.
double insertion_cost(const Dataset& data, const ClusteringState& state,
                      std::size_t point, int target);

// Exact loss increase from deleting `point` from its cluster C:
// |C|/(|C|-1) * ||x - mu(C)||^2. Pre: |C| >= 2.
double removal_gain(const Dataset& data, const ClusteringState& state,
                    std::size_t point);

// Loss decrease achieved by moving `point` to `target`: removal gain minus
// insertion cost, which equals phi(C_r) + phi(C_j) - phi(C_r \ {x})
// - phi(C_j + {x}). Positive iff the move strictly reduces the loss.
// Pre: the point's cluster has size >= 2 and target differs from it.
double delta_decrease(const Dataset& data, const ClusteringState& state,
                      std::size_t point, int target);

// Full recomputation check of the state against the dataset: sizes match the
// assignment, and centroid sums agree with exact per-cluster sums to the
// given relative tolerance.
bool state_is_consistent(const Dataset& data, const ClusteringState& state,
                         double rel_tol = 1e-9);

double squared_distance(std::span<const double> a, std::span<const double> b);

enum class ScheduleKind { constant_one, linear_decay };

// Acceptance-threshold multiplier as a function of the epoch counter.
// constant_one keeps it at 1; linear_decay starts at 3/2 and decays to 1
// at epoch max_iterations, clamped below at 1 afterwards.
struct ScheduleSpec {
    ScheduleKind kind = ScheduleKind::constant_one;
    int max_iterations = 100;

    double multiplier(int n_iter) const {
        if (kind == ScheduleKind::constant_one) return 1.0;
        const double m = 1.5 - static_cast<double>(n_iter) / (2.0 * max_iterations);
        return m > 1.0 ? m : 1.0;
    }
};

// Outcome of one optimizer run.
struct RunReport {
    double final_loss = 0.0;
    int iterations_used = 0;
    bool converged = false;  // true iff a full pass produced zero moves
    std::optional<double> nmi;
    std::uint64_t seed = 0;
    double wall_seconds = 0.0;
};

}  // namespace kmopt

#endif  // KMOPT_CORE_HPP
