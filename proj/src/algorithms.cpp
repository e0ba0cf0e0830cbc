#include "kmopt/algorithms.hpp"

#include <chrono>
#include <limits>
#include <stdexcept>
#include <vector>

#include "kmopt/metrics.hpp"
#include "kmopt/rng.hpp"

namespace kmopt {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// Materializes sum/size centroids; rows of empty clusters are left zero and
// must be guarded by the caller.
void snapshot_centroids(const ClusteringState& state, std::vector<double>& centroids) {
    const std::size_t d = state.dim();
    centroids.assign(static_cast<std::size_t>(state.k()) * d, 0.0);
    for (int c = 0; c < state.k(); ++c) {
        if (state.cluster_size(c) > 0) {
            state.centroid(c, {centroids.data() + static_cast<std::size_t>(c) * d, d});
        }
    }
}

void set_report_nmi(const Dataset& data, const ClusteringState& state, RunReport& report) {
    if (data.labels()) report.nmi = nmi(state.assignment(), *data.labels());
}

}  // namespace

LocalSearchConfig hartigan_config(int n_iter, std::uint64_t seed) {
    return {.schedule = {ScheduleKind::constant_one, n_iter},
            .finish_with_hartigan = false,
            .rng_seed = seed};
}

LocalSearchConfig smartigan_config(int n_iter, std::uint64_t seed, bool finish_with_hartigan) {
    return {.schedule = {ScheduleKind::linear_decay, n_iter},
            .finish_with_hartigan = finish_with_hartigan,
            .rng_seed = seed};
}

std::size_t repair_empty_clusters(const Dataset& data, ClusteringState& state) {
    std::size_t repairs = 0;
    const std::size_t d = data.dim();
    std::vector<double> centroids;
    for (int c = 0; c < state.k(); ++c) {
        if (state.cluster_size(c) > 0) continue;
        snapshot_centroids(state, centroids);
        double best = -1.0;
        std::size_t pick = data.size();
        for (std::size_t i = 0; i < data.size(); ++i) {
            const auto own = static_cast<std::size_t>(state.cluster_of(i));
            if (state.cluster_size(static_cast<int>(own)) < 2) continue;
            const double dist2 =
                squared_distance(data.point(i), {centroids.data() + own * d, d});
            if (dist2 > best) {
                best = dist2;
                pick = i;
            }
        }
        if (pick == data.size()) {
            throw std::logic_error("repair_empty_clusters: no donor point available");
        }
        state.move_point(data, pick, c);
        ++repairs;
    }
    return repairs;
}

std::size_t lloyd_step(const Dataset& data, ClusteringState& state) {
    const std::size_t d = data.dim();
    const int k = state.k();
    std::vector<double> centroids;
    snapshot_centroids(state, centroids);

    std::vector<int> next(data.size());
    std::size_t moves = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto x = data.point(i);
        double best = std::numeric_limits<double>::infinity();
        int best_c = -1;
        for (int c = 0; c < k; ++c) {
            if (state.cluster_size(c) == 0) continue;
            const double dist2 =
                squared_distance(x, {centroids.data() + static_cast<std::size_t>(c) * d, d});
            if (dist2 < best) {
                best = dist2;
                best_c = c;
            }
        }
        next[i] = best_c;
        if (best_c != state.cluster_of(i)) ++moves;
    }
    state.reassign_all(data, std::move(next));
    moves += repair_empty_clusters(data, state);
    return moves;
}

RunReport run_lloyd(const Dataset& data, ClusteringState& state, int max_iterations) {
    if (max_iterations < 1) throw std::invalid_argument("run_lloyd: max_iterations must be >= 1");
    const auto start = Clock::now();
    RunReport report;
    for (int it = 0; it < max_iterations; ++it) {
        const std::size_t moves = lloyd_step(data, state);
        ++report.iterations_used;
        if (moves == 0) {
            report.converged = true;
            break;
        }
    }
    report.final_loss = total_loss(data, state);
    set_report_nmi(data, state, report);
    report.wall_seconds = seconds_since(start);
    return report;
}

std::size_t local_search_epoch(const Dataset& data, ClusteringState& state,
                               double multiplier, std::span<const std::uint32_t> order) {
    const std::size_t d = data.dim();
    const int k = state.k();
    std::vector<double> centroids;
    snapshot_centroids(state, centroids);

    std::size_t moves = 0;
    for (const std::uint32_t i : order) {
        const int r = state.cluster_of(i);
        const auto size_r = static_cast<double>(state.cluster_size(r));
        if (size_r < 2.0) continue;

        const auto x = data.point(i);
        double best_cost = std::numeric_limits<double>::infinity();
        int best_j = -1;
        for (int j = 0; j < k; ++j) {
            if (j == r) continue;
            const auto size_j = static_cast<double>(state.cluster_size(j));
            double cost = 0.0;
            if (size_j > 0.0) {
                const double dist2 = squared_distance(
                    x, {centroids.data() + static_cast<std::size_t>(j) * d, d});
                cost = size_j / (size_j + 1.0) * dist2;
            }
            if (cost < best_cost) {
                best_cost = cost;
                best_j = j;
            }
        }
        if (best_j < 0) continue;  // k == 1: nowhere to go

        const double dist2_r =
            squared_distance(x, {centroids.data() + static_cast<std::size_t>(r) * d, d});
        const double gain = size_r / (size_r - 1.0) * dist2_r;
        if (best_cost <= gain * multiplier) {
            state.move_point(data, i, best_j);
            state.centroid(r, {centroids.data() + static_cast<std::size_t>(r) * d, d});
            state.centroid(best_j, {centroids.data() + static_cast<std::size_t>(best_j) * d, d});
            ++moves;
        }
    }
    return moves;
}

RunReport run_local_search(const Dataset& data, ClusteringState& state,
                           const LocalSearchConfig& config) {
    const int horizon = config.schedule.max_iterations;
    if (horizon < 0) throw std::invalid_argument("run_local_search: negative epoch horizon");
    const auto start = Clock::now();
    const auto n = static_cast<std::uint32_t>(data.size());
    RandomStream root(config.rng_seed);

    RunReport report;
    report.seed = config.rng_seed;

    // Epoch permutations are derived from the seed by epoch index, so two
    // runs sharing a seed see identical point orders regardless of how the
    // schedules diverge.
    const auto run_phase = [&](ScheduleKind kind) {
        report.converged = false;
        for (int e = 0; e < horizon; ++e) {
            const auto order =
                root.derive({static_cast<std::uint64_t>(report.iterations_used)}).permutation(n);
            const double multiplier =
                kind == ScheduleKind::constant_one ? 1.0 : config.schedule.multiplier(e);
            const std::size_t moves = local_search_epoch(data, state, multiplier, order);
            ++report.iterations_used;
            if (moves == 0) {
                report.converged = true;
                break;
            }
        }
    };

    run_phase(config.schedule.kind);
    if (config.schedule.kind != ScheduleKind::constant_one && config.finish_with_hartigan) {
        run_phase(ScheduleKind::constant_one);
    }

    report.final_loss = total_loss(data, state);
    set_report_nmi(data, state, report);
    report.wall_seconds = seconds_since(start);
    return report;
}

bool is_lloyd_stable(const Dataset& data, const ClusteringState& state) {
    const std::size_t d = data.dim();
    std::vector<double> centroids;
    snapshot_centroids(state, centroids);
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto x = data.point(i);
        const auto own = static_cast<std::size_t>(state.cluster_of(i));
        const double own_dist2 = squared_distance(x, {centroids.data() + own * d, d});
        for (int c = 0; c < state.k(); ++c) {
            if (state.cluster_size(c) == 0 || static_cast<std::size_t>(c) == own) continue;
            const double dist2 =
                squared_distance(x, {centroids.data() + static_cast<std::size_t>(c) * d, d});
            if (dist2 < own_dist2) return false;
        }
    }
    return true;
}

bool is_hartigan_stable(const Dataset& data, const ClusteringState& state) {
    for (std::size_t i = 0; i < data.size(); ++i) {
        const int r = state.cluster_of(i);
        if (state.cluster_size(r) < 2) continue;
        const double gain = removal_gain(data, state, i);
        for (int j = 0; j < state.k(); ++j) {
            if (j == r) continue;
            if (insertion_cost(data, state, i, j) <= gain) return false;
        }
    }
    return true;
}

}  // namespace kmopt
