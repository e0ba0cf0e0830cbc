#ifndef KMOPT_DATAIO_HPP
#define KMOPT_DATAIO_HPP

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "kmopt/core.hpp"

namespace kmopt {

// Malformed manifest or experiment description (CLI exit code 2).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Missing or malformed dataset content (CLI exit code 3).
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Describes how to read one delimited-text dataset. Relative data paths are
// resolved against the directory containing the manifest file.
struct DatasetManifest {
    std::string path;
    char delimiter = ',';
    std::vector<std::size_t> feature_columns;
    std::optional<std::size_t> label_column;
    bool has_header = false;
    std::string name;
};

// Reads a key = value manifest file. Keys: name, path, delimiter, features
// (comma-separated column indices), label (optional column index), header
// (true/false).
DatasetManifest load_manifest(const std::string& manifest_path);

// Loads the dataset named by the manifest. Every feature cell must parse as
// a finite number; anything else is a DataError naming the row and column.
// Label cells are taken as integers when the whole column parses as
// integers, otherwise distinct strings are enumerated by first appearance.
Dataset load_dataset(const DatasetManifest& manifest);

// Writes a Dataset as delimited text with a header row, features first and
// an optional trailing label column.
void write_dataset_csv(const Dataset& data, const std::string& path);

// One aggregated result line of a benchmark report.
struct ReportRow {
    std::string dataset;
    std::string algorithm;
    int k = 0;
    std::size_t runs = 0;
    double mean_loss = 0.0;
    double std_loss = 0.0;
    double min_loss = 0.0;
    std::optional<double> mean_nmi;
    std::optional<double> pct_vs_baseline;
};

enum class ReportFormat { csv, markdown_table };

// Renders rows in the fixed column order
// dataset,algorithm,k,runs,mean_loss,std_loss,min_loss,mean_nmi,pct_vs_baseline
// with six fixed decimals; absent values print as n/a. The optional header
// comment (e.g. the master seed) is emitted before the table.
std::string format_report(std::span<const ReportRow> rows, ReportFormat format,
                          const std::string& header_comment = "");

void write_report(std::span<const ReportRow> rows, const std::string& path, ReportFormat format,
                  const std::string& header_comment = "");

// Reads back a CSV report produced by write_report; '#' lines are skipped.
std::vector<ReportRow> read_report_csv(const std::string& path);

}  // namespace kmopt

#endif  // KMOPT_DATAIO_HPP
