#include "kmopt/core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace kmopt {

namespace {

void require_same_shape(const Dataset& data, const ClusteringState& state) {
    if (data.size() != state.n() || data.dim() != state.dim()) {
        throw std::invalid_argument("dataset and clustering state shapes differ");
    }
}

}  // namespace

Dataset::Dataset(std::string name, std::size_t dim, std::vector<double> values,
                 std::optional<std::vector<int>> labels)
    : name_(std::move(name)), dim_(dim), values_(std::move(values)), labels_(std::move(labels)) {
    if (dim_ == 0) throw std::invalid_argument("Dataset: dimension must be >= 1");
    if (values_.empty() || values_.size() % dim_ != 0) {
        throw std::invalid_argument("Dataset: values must hold n >= 1 complete points");
    }
    n_ = values_.size() / dim_;
    for (double v : values_) {
        if (!std::isfinite(v)) throw std::invalid_argument("Dataset: non-finite coordinate");
    }
    if (labels_ && labels_->size() != n_) {
        throw std::invalid_argument("Dataset: label count differs from point count");
    }
}

ClusteringState::ClusteringState(const Dataset& data, int k, std::vector<int> assignment)
    : k_(k), dim_(data.dim()), assignment_(std::move(assignment)) {
    if (k_ < 1 || static_cast<std::size_t>(k_) > data.size()) {
        throw std::invalid_argument("ClusteringState: k must be in [1, n]");
    }
    if (assignment_.size() != data.size()) {
        throw std::invalid_argument("ClusteringState: assignment length differs from n");
    }
    for (int c : assignment_) {
        if (c < 0 || c >= k_) throw std::invalid_argument("ClusteringState: cluster index out of range");
    }
    rebuild(data);
}

std::size_t ClusteringState::cluster_size(int cluster) const {
    check_cluster(cluster);
    return sizes_[static_cast<std::size_t>(cluster)];
}

std::span<const double> ClusteringState::centroid_sum(int cluster) const {
    check_cluster(cluster);
    return {centroid_sums_.data() + static_cast<std::size_t>(cluster) * dim_, dim_};
}

void ClusteringState::centroid(int cluster, std::span<double> out) const {
    check_cluster(cluster);
    const std::size_t size = sizes_[static_cast<std::size_t>(cluster)];
    if (size == 0) throw std::invalid_argument("centroid: cluster is empty");
    const double* sum = centroid_sums_.data() + static_cast<std::size_t>(cluster) * dim_;
    for (std::size_t j = 0; j < dim_; ++j) out[j] = sum[j] / static_cast<double>(size);
}

void ClusteringState::move_point(const Dataset& data, std::size_t point, int target) {
    require_same_shape(data, *this);
    if (point >= n()) throw std::out_of_range("move_point: point index out of range");
    check_cluster(target);
    const int source = assignment_[point];
    if (source == target) throw std::invalid_argument("move_point: target equals current cluster");

    const auto x = data.point(point);
    double* src = centroid_sums_.data() + static_cast<std::size_t>(source) * dim_;
    double* dst = centroid_sums_.data() + static_cast<std::size_t>(target) * dim_;
    for (std::size_t j = 0; j < dim_; ++j) {
        src[j] -= x[j];
        dst[j] += x[j];
    }
    --sizes_[static_cast<std::size_t>(source)];
    ++sizes_[static_cast<std::size_t>(target)];
    assignment_[point] = target;

    if (++moves_since_rebuild_ >= 10000) rebuild(data);
}

void ClusteringState::reassign_all(const Dataset& data, std::vector<int> assignment) {
    if (assignment.size() != data.size()) {
        throw std::invalid_argument("reassign_all: assignment length differs from n");
    }
    for (int c : assignment) {
        if (c < 0 || c >= k_) throw std::invalid_argument("reassign_all: cluster index out of range");
    }
    assignment_ = std::move(assignment);
    rebuild(data);
}

void ClusteringState::rebuild(const Dataset& data) {
    require_same_shape(data, *this);
    sizes_.assign(static_cast<std::size_t>(k_), 0);
    centroid_sums_.assign(static_cast<std::size_t>(k_) * dim_, 0.0);
    for (std::size_t i = 0; i < assignment_.size(); ++i) {
        const auto c = static_cast<std::size_t>(assignment_[i]);
        ++sizes_[c];
        const auto x = data.point(i);
        double* sum = centroid_sums_.data() + c * dim_;
        for (std::size_t j = 0; j < dim_; ++j) sum[j] += x[j];
    }
    moves_since_rebuild_ = 0;
}

void ClusteringState::check_cluster(int cluster) const {
    if (cluster < 0 || cluster >= k_) {
        throw std::out_of_range("cluster index out of range: " + std::to_string(cluster));
    }
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double diff = a[j] - b[j];
        s += diff * diff;
    }
    return s;
}

double total_loss(const Dataset& data, const ClusteringState& state) {
    require_same_shape(data, state);
    const std::size_t d = data.dim();
    const int k = state.k();
    std::vector<double> centroids(static_cast<std::size_t>(k) * d, 0.0);
    for (int c = 0; c < k; ++c) {
        if (state.cluster_size(c) > 0) {
            state.centroid(c, {centroids.data() + static_cast<std::size_t>(c) * d, d});
        }
    }
    double loss = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto c = static_cast<std::size_t>(state.cluster_of(i));
        loss += squared_distance(data.point(i), {centroids.data() + c * d, d});
    }
    return loss;
}

double phi(const Dataset& data, const ClusteringState& state, int cluster) {
    require_same_shape(data, state);
    if (state.cluster_size(cluster) == 0) return 0.0;
    std::vector<double> mu(data.dim());
    state.centroid(cluster, mu);
    double s = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (state.cluster_of(i) == cluster) s += squared_distance(data.point(i), mu);
    }
    return s;
}

double insertion_cost(const Dataset& data, const ClusteringState& state,
                      std::size_t point, int target) {
    require_same_shape(data, state);
    if (point >= data.size()) throw std::out_of_range("insertion_cost: point index out of range");
    const auto size = static_cast<double>(state.cluster_size(target));
    if (size == 0.0) return 0.0;
    const auto x = data.point(point);
    const auto sum = state.centroid_sum(target);
    double dist2 = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double diff = x[j] - sum[j] / size;
        dist2 += diff * diff;
    }
    return size / (size + 1.0) * dist2;
}

double removal_gain(const Dataset& data, const ClusteringState& state, std::size_t point) {
    require_same_shape(data, state);
    if (point >= data.size()) throw std::out_of_range("removal_gain: point index out of range");
    const int cluster = state.cluster_of(point);
    const auto size = static_cast<double>(state.cluster_size(cluster));
    if (size < 2.0) {
        throw std::invalid_argument("removal_gain: point's cluster is a singleton");
    }
    const auto x = data.point(point);
    const auto sum = state.centroid_sum(cluster);
    double dist2 = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double diff = x[j] - sum[j] / size;
        dist2 += diff * diff;
    }
    return size / (size - 1.0) * dist2;
}

double delta_decrease(const Dataset& data, const ClusteringState& state,
                      std::size_t point, int target) {
    require_same_shape(data, state);
    if (point >= data.size()) throw std::out_of_range("delta_decrease: point index out of range");
    if (target == state.cluster_of(point)) {
        throw std::invalid_argument("delta_decrease: target equals current cluster");
    }
    return removal_gain(data, state, point) - insertion_cost(data, state, point, target);
}

bool state_is_consistent(const Dataset& data, const ClusteringState& state, double rel_tol) {
    if (data.size() != state.n() || data.dim() != state.dim()) return false;
    const int k = state.k();
    if (k < 1 || static_cast<std::size_t>(k) > data.size()) return false;
    const std::size_t d = data.dim();
    std::vector<std::size_t> sizes(static_cast<std::size_t>(k), 0);
    std::vector<double> sums(static_cast<std::size_t>(k) * d, 0.0);
    for (std::size_t i = 0; i < data.size(); ++i) {
        const int c = state.cluster_of(i);
        if (c < 0 || c >= k) return false;
        ++sizes[static_cast<std::size_t>(c)];
        const auto x = data.point(i);
        for (std::size_t j = 0; j < d; ++j) sums[static_cast<std::size_t>(c) * d + j] += x[j];
    }
    std::size_t total = 0;
    for (int c = 0; c < k; ++c) {
        const auto uc = static_cast<std::size_t>(c);
        if (sizes[uc] != state.cluster_size(c)) return false;
        total += sizes[uc];
        const auto stored = state.centroid_sum(c);
        for (std::size_t j = 0; j < d; ++j) {
            const double expect = sums[uc * d + j];
            const double scale = std::max(std::abs(expect), std::abs(stored[j]));
            if (std::abs(stored[j] - expect) > rel_tol * std::max(scale, 1.0)) return false;
        }
    }
    return total == data.size();
}

}  // namespace kmopt
