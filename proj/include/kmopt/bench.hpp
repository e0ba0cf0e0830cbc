#ifndef KMOPT_BENCH_HPP
#define KMOPT_BENCH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kmopt/core.hpp"
#include "kmopt/dataio.hpp"
#include "kmopt/init.hpp"
#include "kmopt/synth.hpp"

namespace kmopt {

enum class Algorithm { lloyd, hartigan, smartigan, smartigan_star };

std::string algorithm_name(Algorithm a);
std::optional<Algorithm> algorithm_from_name(const std::string& name);

// Synthetic source of an experiment, instantiated `instances` times with
// per-instance seeds. When k_true is unset each grid cell generates its own
// mixtures with k_true equal to the cell's k; a fixed value decouples the
// generator from the clustering k for model-mismatch studies.
struct MixtureSource {
    MixtureRegime regime = MixtureRegime::small_distance;
    std::size_t d = 2;
    std::optional<int> k_true;
    std::size_t n = 100;
};

// Declarative description of one experiment: a data source, the k grid, the
// algorithms to compare, and the randomness/repetition layout. Exactly one
// of manifest/mixture is set. For every (instance, run) pair all algorithms
// share the dataset, the initial state and the permutation stream, so paired
// columns differ only in the acceptance schedule.
struct ExperimentSpec {
    std::string name;
    std::optional<DatasetManifest> manifest;
    std::optional<MixtureSource> mixture;
    std::vector<int> k_values;
    std::vector<Algorithm> algorithms;
    InitKind init = InitKind::random_assignment;
    int runs_per_instance = 1;
    int instances = 1;  // must stay 1 for real datasets
    std::uint64_t master_seed = 0;
    int n_iter = 100;
    bool finish_with_hartigan = true;
    int workers = 1;
};

// Everything recorded about one (instance, run) cell.
struct RunRecord {
    int instance = 0;
    int run = 0;
    std::uint64_t child_seed = 0;
    std::vector<double> initial_losses;  // parallel to spec.algorithms
    std::vector<RunReport> reports;      // parallel to spec.algorithms
};

struct AlgorithmAggregate {
    Algorithm algorithm = Algorithm::hartigan;
    std::size_t runs = 0;
    double mean_loss = 0.0;
    double std_loss = 0.0;  // sample standard deviation over all runs
    double min_loss = 0.0;
    std::optional<double> mean_nmi;
    // Per-instance mean losses are compared against the Hartigan baseline and
    // the percent differences averaged over instances. Absent when no
    // Hartigan column was run.
    std::optional<double> mean_pct_vs_baseline;
    std::size_t wins = 0;  // per (instance, run) vs the Hartigan baseline
    std::size_t ties = 0;
    std::size_t losses = 0;
};

// Aggregated paired statistics for one k of the experiment grid.
struct PairedComparison {
    std::string label;
    int k = 0;
    std::vector<AlgorithmAggregate> aggregates;
    std::vector<RunRecord> records;  // instance-major, run-minor
};

// Runs the full grid (one PairedComparison per k). Jobs are independent and
// may execute on spec.workers threads; results are identical regardless of
// the worker count.
std::vector<PairedComparison> run_experiment(const ExperimentSpec& spec);

// Recomputes a single (instance, run) cell, bit-identical to the record
// produced inside run_experiment.
RunRecord replay_run(const ExperimentSpec& spec, int instance, int run, int k);

// Parses the flat key = value experiment description format ('#' comments).
ExperimentSpec parse_experiment_file(const std::string& path);
ExperimentSpec parse_experiment_text(const std::string& text, const std::string& origin);

std::vector<ReportRow> to_report_rows(const std::vector<PairedComparison>& comparisons);

}  // namespace kmopt

#endif  // KMOPT_BENCH_HPP
