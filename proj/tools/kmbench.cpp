// kmbench: run and replay paired k-means benchmark experiments.
//
// Subcommands:
//   run EXPFILE      run an experiment description, print or write the report
//   replay EXPFILE   recompute a single (instance, run, k) cell for auditing
//   datasets [DIR]   list dataset manifests and their resolved shapes
//   gen              export a synthetic mixture dataset (CSV + manifest)
//
// Exit codes: 0 success, 2 spec/parse error, 3 dataset error,
// 4 internal invariant failure.

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "kmopt/bench.hpp"
#include "kmopt/dataio.hpp"
#include "kmopt/synth.hpp"

namespace {

namespace fs = std::filesystem;

struct RunOptions {
    std::string exp_file;
    std::string out_path;
    std::string format = "csv";
    std::optional<std::uint64_t> seed;
    std::optional<int> workers;
    std::optional<int> n_iter;
    std::optional<std::string> finish_hartigan;
};

void apply_overrides(kmopt::ExperimentSpec& spec, const RunOptions& opt) {
    if (opt.seed) spec.master_seed = *opt.seed;
    if (opt.workers) spec.workers = *opt.workers;
    if (opt.n_iter) spec.n_iter = *opt.n_iter;
    if (opt.finish_hartigan) spec.finish_with_hartigan = *opt.finish_hartigan == "on";
}

int cmd_run(const RunOptions& opt) {
    kmopt::ExperimentSpec spec = kmopt::parse_experiment_file(opt.exp_file);
    apply_overrides(spec, opt);

    const auto comparisons = kmopt::run_experiment(spec);
    const auto rows = kmopt::to_report_rows(comparisons);
    const auto format =
        opt.format == "markdown" ? kmopt::ReportFormat::markdown_table : kmopt::ReportFormat::csv;
    const std::string header = "master_seed=" + std::to_string(spec.master_seed);
    if (opt.out_path.empty()) {
        std::cout << kmopt::format_report(rows, format, header);
    } else {
        kmopt::write_report(rows, opt.out_path, format, header);
        std::cerr << "wrote " << rows.size() << " rows to " << opt.out_path << "\n";
    }
    return 0;
}

int cmd_replay(const std::string& exp_file, int instance, int run, int k,
               std::optional<std::uint64_t> seed) {
    kmopt::ExperimentSpec spec = kmopt::parse_experiment_file(exp_file);
    if (seed) spec.master_seed = *seed;
    const kmopt::RunRecord record = kmopt::replay_run(spec, instance, run, k);

    std::printf("instance=%d run=%d k=%d child_seed=%" PRIu64 "\n", record.instance, record.run, k,
                record.child_seed);
    for (std::size_t a = 0; a < spec.algorithms.size(); ++a) {
        const auto& report = record.reports[a];
        std::printf("%-15s initial_loss=%.17g final_loss=%.17g epochs=%d converged=%d",
                    kmopt::algorithm_name(spec.algorithms[a]).c_str(), record.initial_losses[a],
                    report.final_loss, report.iterations_used, report.converged ? 1 : 0);
        if (report.nmi) std::printf(" nmi=%.6f", *report.nmi);
        std::printf("\n");
    }
    return 0;
}

int cmd_datasets(const std::string& dir) {
    if (!fs::is_directory(dir)) {
        std::cerr << "not a directory: " << dir << "\n";
        return 3;
    }
    std::vector<fs::path> manifests;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() == ".manifest") manifests.push_back(entry.path());
    }
    std::sort(manifests.begin(), manifests.end());
    if (manifests.empty()) {
        std::cout << "no manifests in " << dir << "\n";
        return 0;
    }
    for (const auto& path : manifests) {
        try {
            const auto manifest = kmopt::load_manifest(path.string());
            const auto data = kmopt::load_dataset(manifest);
            std::printf("%-12s n=%zu d=%zu labels=%s (%s)\n", data.name().c_str(), data.size(),
                        data.dim(), data.labels() ? "yes" : "no", manifest.path.c_str());
        } catch (const std::exception& e) {
            std::printf("%-12s ERROR: %s\n", path.stem().string().c_str(), e.what());
        }
    }
    return 0;
}

int cmd_gen(const std::string& regime, std::size_t d, int k, std::size_t n, std::uint64_t seed,
            const std::string& out) {
    kmopt::MixtureSpec spec;
    spec.regime = regime == "large" ? kmopt::MixtureRegime::large_distance
                                    : kmopt::MixtureRegime::small_distance;
    spec.d = d;
    spec.k_true = k;
    spec.n = n;
    spec.rng_seed = seed;
    const kmopt::Dataset data = kmopt::generate(spec);
    kmopt::write_dataset_csv(data, out);

    // Companion manifest so the export is immediately loadable.
    const fs::path manifest_path = fs::path(out).replace_extension(".manifest");
    std::ofstream m(manifest_path);
    m << "name = " << data.name() << "\n";
    m << "path = " << fs::path(out).filename().string() << "\n";
    m << "delimiter = ,\n";
    m << "features = ";
    for (std::size_t j = 0; j < d; ++j) m << (j ? "," : "") << j;
    m << "\n";
    m << "label = " << d << "\n";
    m << "header = true\n";
    std::cerr << "wrote " << out << " and " << manifest_path.string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"paired k-means benchmark harness"};
    app.require_subcommand(1);

    RunOptions run_opt;
    auto* run = app.add_subcommand("run", "run an experiment description file");
    run->add_option("expfile", run_opt.exp_file, "experiment description file")->required();
    run->add_option("--out", run_opt.out_path, "write the report here instead of stdout");
    run->add_option("--format", run_opt.format, "csv or markdown")
        ->check(CLI::IsMember({"csv", "markdown"}));
    std::uint64_t seed_value = 0;
    auto* seed_opt = run->add_option("--seed", seed_value, "override the master seed");
    int workers_value = 0;
    auto* workers_opt = run->add_option("--workers", workers_value, "worker thread count");
    int n_iter_value = 0;
    auto* n_iter_opt = run->add_option("--n-iter", n_iter_value, "epoch horizon override");
    std::string finish_value;
    auto* finish_opt = run->add_option("--finish-hartigan", finish_value,
                                       "run constant-threshold epochs after a decaying schedule")
                           ->check(CLI::IsMember({"on", "off"}));

    std::string replay_file;
    int replay_instance = 0, replay_run_idx = 0, replay_k = 0;
    std::uint64_t replay_seed_value = 0;
    auto* replay = app.add_subcommand("replay", "recompute one (instance, run, k) cell");
    replay->add_option("expfile", replay_file, "experiment description file")->required();
    replay->add_option("--instance", replay_instance, "instance index")->required();
    replay->add_option("--run", replay_run_idx, "run index")->required();
    replay->add_option("--k", replay_k, "cluster count (must be in the grid)")->required();
    auto* replay_seed_opt = replay->add_option("--seed", replay_seed_value, "override the master seed");

    std::string datasets_dir = "data";
    auto* datasets = app.add_subcommand("datasets", "list dataset manifests");
    datasets->add_option("dir", datasets_dir, "directory to scan (default: data)");

    std::string gen_regime = "small";
    std::size_t gen_d = 2, gen_n = 250;
    int gen_k = 10;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen", "export a synthetic mixture dataset");
    gen->add_option("--regime", gen_regime, "small or large")
        ->check(CLI::IsMember({"small", "large"}));
    gen->add_option("--d", gen_d, "dimension")->required();
    gen->add_option("--k", gen_k, "number of generating components")->required();
    gen->add_option("--n", gen_n, "number of points")->required();
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_option("--out", gen_out, "output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*run) {
            if (*seed_opt) run_opt.seed = seed_value;
            if (*workers_opt) run_opt.workers = workers_value;
            if (*n_iter_opt) run_opt.n_iter = n_iter_value;
            if (*finish_opt) run_opt.finish_hartigan = finish_value;
            return cmd_run(run_opt);
        }
        if (*replay) {
            std::optional<std::uint64_t> seed;
            if (*replay_seed_opt) seed = replay_seed_value;
            return cmd_replay(replay_file, replay_instance, replay_run_idx, replay_k, seed);
        }
        if (*datasets) return cmd_datasets(datasets_dir);
        if (*gen) return cmd_gen(gen_regime, gen_d, gen_k, gen_n, gen_seed, gen_out);
    } catch (const kmopt::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const kmopt::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
