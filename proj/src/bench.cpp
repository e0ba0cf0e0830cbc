#include "kmopt/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "kmopt/algorithms.hpp"
#include "kmopt/metrics.hpp"
#include "kmopt/rng.hpp"

namespace kmopt {

namespace {

// Salts of the seed-derivation tree. Children are derived from
// (master_seed, salt, indices...) so every consumer gets an independent
// stream and paired algorithms share the ones that must be equal.
constexpr std::uint64_t kSaltData = 0xDA7A;
constexpr std::uint64_t kSaltChild = 0xC41D;
constexpr std::uint64_t kSaltInit = 1;
constexpr std::uint64_t kSaltSearch = 2;

void validate_spec(const ExperimentSpec& spec) {
    if (spec.manifest.has_value() == spec.mixture.has_value()) {
        throw ParseError("experiment: exactly one of manifest/mixture source required");
    }
    if (spec.manifest && spec.instances != 1) {
        throw ParseError("experiment: real datasets use exactly one instance");
    }
    if (spec.k_values.empty()) throw ParseError("experiment: no k values");
    if (spec.algorithms.empty()) throw ParseError("experiment: no algorithms");
    if (spec.runs_per_instance < 1) throw ParseError("experiment: runs must be >= 1");
    if (spec.instances < 1) throw ParseError("experiment: instances must be >= 1");
    if (spec.n_iter < 0) throw ParseError("experiment: n_iter must be >= 0");
    if (spec.workers < 1) throw ParseError("experiment: workers must be >= 1");
}

Dataset instance_dataset(const ExperimentSpec& spec, int instance, int k) {
    if (spec.manifest) return load_dataset(*spec.manifest);
    const auto& mix = *spec.mixture;
    MixtureSpec ms;
    ms.regime = mix.regime;
    ms.d = mix.d;
    ms.k_true = mix.k_true.value_or(k);
    ms.n = mix.n;
    ms.rng_seed = derive_seed(spec.master_seed, {kSaltData, static_cast<std::uint64_t>(instance)});
    return generate(ms);
}

std::string source_label(const ExperimentSpec& spec) {
    if (!spec.name.empty()) return spec.name;
    if (spec.manifest) return spec.manifest->name;
    const auto& mix = *spec.mixture;
    std::string label = "synth-" + regime_name(mix.regime) + "-d" + std::to_string(mix.d) + "-n" +
                        std::to_string(mix.n);
    if (mix.k_true) label += "-ktrue" + std::to_string(*mix.k_true);
    return label;
}

RunRecord execute_cell(const ExperimentSpec& spec, const Dataset& data, int instance, int run,
                       int k) {
    RunRecord record;
    record.instance = instance;
    record.run = run;
    record.child_seed = derive_seed(
        spec.master_seed,
        {kSaltChild, static_cast<std::uint64_t>(instance), static_cast<std::uint64_t>(run)});
    const std::uint64_t init_seed = derive_seed(record.child_seed, {kSaltInit});
    const std::uint64_t search_seed = derive_seed(record.child_seed, {kSaltSearch});

    const ClusteringState initial =
        make_initial_state(data, {.kind = spec.init, .k = k, .rng_seed = init_seed});

    for (const Algorithm algorithm : spec.algorithms) {
        ClusteringState state = initial;
        record.initial_losses.push_back(total_loss(data, state));
        RunReport report;
        switch (algorithm) {
            case Algorithm::lloyd:
                report = run_lloyd(data, state, std::max(spec.n_iter, 1));
                report.seed = record.child_seed;
                break;
            case Algorithm::hartigan:
                report = run_local_search(data, state, hartigan_config(spec.n_iter, search_seed));
                break;
            case Algorithm::smartigan:
                report = run_local_search(
                    data, state,
                    smartigan_config(spec.n_iter, search_seed, spec.finish_with_hartigan));
                break;
            case Algorithm::smartigan_star:
                report = run_local_search(data, state,
                                          smartigan_config(spec.n_iter, search_seed, true));
                break;
        }
        record.reports.push_back(report);
    }
    return record;
}

AlgorithmAggregate aggregate_algorithm(const ExperimentSpec& spec,
                                       const std::vector<RunRecord>& records,
                                       std::size_t algo_index, std::size_t baseline_index,
                                       bool has_baseline) {
    AlgorithmAggregate agg;
    agg.algorithm = spec.algorithms[algo_index];
    agg.runs = records.size();

    double sum = 0.0;
    double min = records.front().reports[algo_index].final_loss;
    double nmi_sum = 0.0;
    bool any_nmi = !records.empty();
    for (const auto& record : records) {
        const auto& report = record.reports[algo_index];
        sum += report.final_loss;
        min = std::min(min, report.final_loss);
        if (report.nmi) nmi_sum += *report.nmi;
        else any_nmi = false;
    }
    agg.mean_loss = sum / static_cast<double>(records.size());
    agg.min_loss = min;
    if (any_nmi) agg.mean_nmi = nmi_sum / static_cast<double>(records.size());

    double sq = 0.0;
    for (const auto& record : records) {
        const double diff = record.reports[algo_index].final_loss - agg.mean_loss;
        sq += diff * diff;
    }
    agg.std_loss =
        records.size() > 1 ? std::sqrt(sq / static_cast<double>(records.size() - 1)) : 0.0;

    if (has_baseline) {
        // Mean over runs within each instance, percent difference per
        // instance, then the plain average over instances.
        const auto runs = static_cast<std::size_t>(spec.runs_per_instance);
        const auto instances = static_cast<std::size_t>(spec.instances);
        double pct_sum = 0.0;
        std::size_t pct_count = 0;
        for (std::size_t inst = 0; inst < instances; ++inst) {
            double own = 0.0;
            double base = 0.0;
            for (std::size_t r = 0; r < runs; ++r) {
                const auto& record = records[inst * runs + r];
                own += record.reports[algo_index].final_loss;
                base += record.reports[baseline_index].final_loss;
            }
            const double pct = percent_difference(base / runs, own / runs);
            if (std::isfinite(pct)) {
                pct_sum += pct;
                ++pct_count;
            }
        }
        if (pct_count > 0) agg.mean_pct_vs_baseline = pct_sum / static_cast<double>(pct_count);

        for (const auto& record : records) {
            const double own = record.reports[algo_index].final_loss;
            const double base = record.reports[baseline_index].final_loss;
            const double tol = 1e-12 * std::max(std::abs(own), std::abs(base));
            if (std::abs(own - base) <= tol) ++agg.ties;
            else if (own < base) ++agg.wins;
            else ++agg.losses;
        }
    }
    return agg;
}

}  // namespace

std::string algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::lloyd: return "lloyd";
        case Algorithm::hartigan: return "hartigan";
        case Algorithm::smartigan: return "smartigan";
        case Algorithm::smartigan_star: return "smartigan_star";
    }
    return "unknown";
}

std::optional<Algorithm> algorithm_from_name(const std::string& name) {
    if (name == "lloyd") return Algorithm::lloyd;
    if (name == "hartigan") return Algorithm::hartigan;
    if (name == "smartigan") return Algorithm::smartigan;
    if (name == "smartigan_star") return Algorithm::smartigan_star;
    return std::nullopt;
}

std::vector<PairedComparison> run_experiment(const ExperimentSpec& spec) {
    validate_spec(spec);

    // Instance datasets are materialized up front; jobs only read them. A
    // synthetic source without a fixed k_true generates per grid cell, so
    // datasets then vary along the k axis as well.
    const bool per_k = spec.mixture && !spec.mixture->k_true.has_value();
    const std::size_t dataset_rows = per_k ? spec.k_values.size() : 1;
    std::vector<std::vector<Dataset>> datasets(dataset_rows);
    for (std::size_t row = 0; row < dataset_rows; ++row) {
        datasets[row].reserve(static_cast<std::size_t>(spec.instances));
        for (int inst = 0; inst < spec.instances; ++inst) {
            datasets[row].push_back(instance_dataset(spec, inst, spec.k_values[row]));
        }
    }

    struct Job {
        std::size_t k_index;
        int instance;
        int run;
    };
    std::vector<Job> jobs;
    const auto cells_per_k =
        static_cast<std::size_t>(spec.instances) * static_cast<std::size_t>(spec.runs_per_instance);
    jobs.reserve(spec.k_values.size() * cells_per_k);
    for (std::size_t ki = 0; ki < spec.k_values.size(); ++ki) {
        for (int inst = 0; inst < spec.instances; ++inst) {
            for (int run = 0; run < spec.runs_per_instance; ++run) {
                jobs.push_back({ki, inst, run});
            }
        }
    }

    std::vector<std::vector<RunRecord>> results(spec.k_values.size(),
                                                std::vector<RunRecord>(cells_per_k));
    std::atomic<std::size_t> cursor{0};
    std::mutex error_mutex;
    std::size_t error_job = jobs.size();
    std::string error_message;
    const auto worker = [&] {
        while (true) {
            const std::size_t j = cursor.fetch_add(1);
            if (j >= jobs.size()) break;
            const Job& job = jobs[j];
            const auto slot = static_cast<std::size_t>(job.instance) *
                                  static_cast<std::size_t>(spec.runs_per_instance) +
                              static_cast<std::size_t>(job.run);
            const Dataset& data =
                datasets[per_k ? job.k_index : 0][static_cast<std::size_t>(job.instance)];
            try {
                results[job.k_index][slot] =
                    execute_cell(spec, data, job.instance, job.run, spec.k_values[job.k_index]);
            } catch (const std::exception& e) {
                // Abort with the replay coordinates; keep the lowest job so
                // the report is deterministic under any scheduling.
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (j < error_job) {
                    error_job = j;
                    const auto child = derive_seed(spec.master_seed,
                                                   {kSaltChild, static_cast<std::uint64_t>(job.instance),
                                                    static_cast<std::uint64_t>(job.run)});
                    error_message = "run failed at instance=" + std::to_string(job.instance) +
                                    " run=" + std::to_string(job.run) +
                                    " k=" + std::to_string(spec.k_values[job.k_index]) +
                                    " child_seed=" + std::to_string(child) + ": " + e.what();
                }
            }
        }
    };
    const auto thread_count =
        std::min<std::size_t>(static_cast<std::size_t>(spec.workers), jobs.size());
    if (thread_count <= 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(thread_count);
        for (std::size_t t = 0; t < thread_count; ++t) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }
    if (error_job != jobs.size()) throw std::runtime_error(error_message);

    const auto baseline_it =
        std::find(spec.algorithms.begin(), spec.algorithms.end(), Algorithm::hartigan);
    const bool has_baseline = baseline_it != spec.algorithms.end();
    const auto baseline_index =
        static_cast<std::size_t>(std::distance(spec.algorithms.begin(), baseline_it));

    std::vector<PairedComparison> comparisons;
    comparisons.reserve(spec.k_values.size());
    for (std::size_t ki = 0; ki < spec.k_values.size(); ++ki) {
        PairedComparison cmp;
        cmp.label = source_label(spec);
        cmp.k = spec.k_values[ki];
        cmp.records = std::move(results[ki]);
        for (std::size_t a = 0; a < spec.algorithms.size(); ++a) {
            cmp.aggregates.push_back(
                aggregate_algorithm(spec, cmp.records, a, baseline_index, has_baseline));
        }
        comparisons.push_back(std::move(cmp));
    }
    return comparisons;
}

RunRecord replay_run(const ExperimentSpec& spec, int instance, int run, int k) {
    validate_spec(spec);
    if (instance < 0 || instance >= spec.instances) {
        throw std::out_of_range("replay_run: instance out of range");
    }
    if (run < 0 || run >= spec.runs_per_instance) {
        throw std::out_of_range("replay_run: run out of range");
    }
    if (std::find(spec.k_values.begin(), spec.k_values.end(), k) == spec.k_values.end()) {
        throw std::out_of_range("replay_run: k not in the experiment grid");
    }
    const Dataset data = instance_dataset(spec, instance, k);
    return execute_cell(spec, data, instance, run, k);
}

ExperimentSpec parse_experiment_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open experiment file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    ExperimentSpec spec = parse_experiment_text(buf.str(), path);
    // Relative manifest paths resolve against the experiment file's directory.
    return spec;
}

ExperimentSpec parse_experiment_text(const std::string& text, const std::string& origin) {
    namespace fs = std::filesystem;

    ExperimentSpec spec;
    std::string source;
    std::string manifest_path;
    MixtureSource mixture;
    bool saw_regime = false, saw_d = false, saw_n = false;

    const auto trim = [](const std::string& s) {
        const auto b = s.find_first_not_of(" \t\r\n");
        if (b == std::string::npos) return std::string();
        const auto e = s.find_last_not_of(" \t\r\n");
        return s.substr(b, e - b + 1);
    };
    const auto fail = [&](std::size_t line_no, const std::string& message) -> void {
        throw ParseError(origin + ":" + std::to_string(line_no) + ": " + message);
    };
    const auto parse_int = [&](const std::string& value, std::size_t line_no) {
        try {
            std::size_t pos = 0;
            const long long v = std::stoll(value, &pos);
            if (pos != value.size()) throw std::invalid_argument(value);
            return v;
        } catch (const std::exception&) {
            fail(line_no, "expected an integer, got '" + value + "'");
            return 0LL;
        }
    };

    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line.substr(0, line.find('#')));
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) fail(line_no, "expected 'key = value'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));

        if (key == "name") {
            spec.name = value;
        } else if (key == "source") {
            if (value != "dataset" && value != "synthetic") {
                fail(line_no, "source must be 'dataset' or 'synthetic'");
            }
            source = value;
        } else if (key == "manifest") {
            manifest_path = value;
        } else if (key == "regime") {
            if (value == "small_distance") mixture.regime = MixtureRegime::small_distance;
            else if (value == "large_distance") mixture.regime = MixtureRegime::large_distance;
            else fail(line_no, "regime must be small_distance or large_distance");
            saw_regime = true;
        } else if (key == "d") {
            mixture.d = static_cast<std::size_t>(parse_int(value, line_no));
            saw_d = true;
        } else if (key == "k_true") {
            mixture.k_true = static_cast<int>(parse_int(value, line_no));
        } else if (key == "n") {
            mixture.n = static_cast<std::size_t>(parse_int(value, line_no));
            saw_n = true;
        } else if (key == "k") {
            std::stringstream ss(value);
            std::string item;
            while (std::getline(ss, item, ',')) {
                spec.k_values.push_back(static_cast<int>(parse_int(trim(item), line_no)));
            }
        } else if (key == "algorithms") {
            std::stringstream ss(value);
            std::string item;
            while (std::getline(ss, item, ',')) {
                const auto algorithm = algorithm_from_name(trim(item));
                if (!algorithm) fail(line_no, "unknown algorithm '" + trim(item) + "'");
                spec.algorithms.push_back(*algorithm);
            }
        } else if (key == "init") {
            if (value == "random_assignment") spec.init = InitKind::random_assignment;
            else if (value == "random_centroids") spec.init = InitKind::random_centroids;
            else if (value == "kmeans_pp") spec.init = InitKind::kmeans_pp;
            else fail(line_no, "unknown init '" + value + "'");
        } else if (key == "runs") {
            spec.runs_per_instance = static_cast<int>(parse_int(value, line_no));
        } else if (key == "instances") {
            spec.instances = static_cast<int>(parse_int(value, line_no));
        } else if (key == "seed") {
            spec.master_seed = static_cast<std::uint64_t>(parse_int(value, line_no));
        } else if (key == "n_iter") {
            spec.n_iter = static_cast<int>(parse_int(value, line_no));
        } else if (key == "finish_hartigan") {
            if (value == "on") spec.finish_with_hartigan = true;
            else if (value == "off") spec.finish_with_hartigan = false;
            else fail(line_no, "finish_hartigan must be on or off");
        } else if (key == "workers") {
            spec.workers = static_cast<int>(parse_int(value, line_no));
        } else {
            fail(line_no, "unknown key '" + key + "'");
        }
    }

    if (source.empty()) throw ParseError(origin + ": missing 'source'");
    if (source == "dataset") {
        if (manifest_path.empty()) throw ParseError(origin + ": dataset source needs 'manifest'");
        fs::path p(manifest_path);
        if (p.is_relative() && fs::path(origin).has_parent_path()) {
            p = fs::path(origin).parent_path() / p;
        }
        spec.manifest = load_manifest(p.string());
        if (spec.name.empty()) spec.name = spec.manifest->name;
    } else {
        if (!saw_regime || !saw_d || !saw_n) {
            throw ParseError(origin + ": synthetic source needs regime, d and n");
        }
        spec.mixture = mixture;
    }
    validate_spec(spec);
    return spec;
}

std::vector<ReportRow> to_report_rows(const std::vector<PairedComparison>& comparisons) {
    std::vector<ReportRow> rows;
    for (const auto& cmp : comparisons) {
        for (const auto& agg : cmp.aggregates) {
            ReportRow row;
            row.dataset = cmp.label;
            row.algorithm = algorithm_name(agg.algorithm);
            row.k = cmp.k;
            row.runs = agg.runs;
            row.mean_loss = agg.mean_loss;
            row.std_loss = agg.std_loss;
            row.min_loss = agg.min_loss;
            row.mean_nmi = agg.mean_nmi;
            row.pct_vs_baseline = agg.mean_pct_vs_baseline;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace kmopt
