#include "kmopt/dataio.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace kmopt {

namespace {

namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// RFC-4180-style record splitting: quoted fields may contain the delimiter,
// newlines and doubled quotes. Records are separated by LF; a trailing CR is
// stripped from unquoted field ends.
std::vector<std::vector<std::string>> parse_delimited(const std::string& text, char delimiter,
                                                      const std::string& path) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool quoted = false;
    bool any = false;

    const auto end_field = [&] {
        record.push_back(std::move(field));
        field.clear();
    };
    const auto end_record = [&] {
        end_field();
        records.push_back(std::move(record));
        record.clear();
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char ch = text[i];
        any = true;
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(ch);
            }
        } else if (ch == '"' && field.empty()) {
            quoted = true;
        } else if (ch == delimiter) {
            end_field();
        } else if (ch == '\n') {
            if (!field.empty() && field.back() == '\r') field.pop_back();
            end_record();
        } else {
            field.push_back(ch);
        }
    }
    if (quoted) throw DataError(path + ": unterminated quoted field");
    if (!field.empty() || !record.empty()) {
        if (!field.empty() && field.back() == '\r') field.pop_back();
        end_record();
    }
    if (!any || records.empty()) throw DataError(path + ": file is empty");
    return records;
}

double parse_feature(const std::string& cell, const std::string& path, std::size_t row,
                     std::size_t col) {
    const auto where = [&] {
        return path + ": row " + std::to_string(row) + ", column " + std::to_string(col);
    };
    double value = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        throw DataError(where() + ": cannot parse '" + cell + "' as a number");
    }
    if (!std::isfinite(value)) throw DataError(where() + ": non-finite value '" + cell + "'");
    return value;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::optional<long long> parse_integer(const std::string& cell) {
    long long value = 0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) return std::nullopt;
    return value;
}

std::string format_fixed(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::string format_optional(const std::optional<double>& v) {
    if (!v || !std::isfinite(*v)) return "n/a";
    return format_fixed(*v);
}

}  // namespace

DatasetManifest load_manifest(const std::string& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) throw DataError("cannot open manifest: " + manifest_path);

    DatasetManifest m;
    bool have_path = false;
    bool have_features = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line.substr(0, line.find('#')));
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ParseError(manifest_path + ":" + std::to_string(line_no) +
                             ": expected 'key = value'");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key == "name") {
            m.name = value;
        } else if (key == "path") {
            m.path = value;
            have_path = true;
        } else if (key == "delimiter") {
            if (value.size() != 1) {
                throw ParseError(manifest_path + ": delimiter must be a single character");
            }
            m.delimiter = value[0];
        } else if (key == "features") {
            std::stringstream ss(value);
            std::string item;
            while (std::getline(ss, item, ',')) {
                const auto idx = parse_integer(trim(item));
                if (!idx || *idx < 0) {
                    throw ParseError(manifest_path + ": bad feature column '" + item + "'");
                }
                m.feature_columns.push_back(static_cast<std::size_t>(*idx));
            }
            have_features = true;
        } else if (key == "label") {
            const auto idx = parse_integer(value);
            if (!idx || *idx < 0) throw ParseError(manifest_path + ": bad label column");
            m.label_column = static_cast<std::size_t>(*idx);
        } else if (key == "header") {
            if (value == "true") m.has_header = true;
            else if (value == "false") m.has_header = false;
            else throw ParseError(manifest_path + ": header must be true or false");
        } else {
            throw ParseError(manifest_path + ": unknown key '" + key + "'");
        }
    }
    if (!have_path || !have_features) {
        throw ParseError(manifest_path + ": 'path' and 'features' are required");
    }
    if (m.feature_columns.empty()) throw ParseError(manifest_path + ": no feature columns");
    if (m.label_column &&
        std::find(m.feature_columns.begin(), m.feature_columns.end(), *m.label_column) !=
            m.feature_columns.end()) {
        throw ParseError(manifest_path + ": label column listed among features");
    }
    if (m.name.empty()) m.name = fs::path(manifest_path).stem().string();

    const fs::path data_path(m.path);
    if (data_path.is_relative()) {
        m.path = (fs::path(manifest_path).parent_path() / data_path).string();
    }
    return m;
}

Dataset load_dataset(const DatasetManifest& manifest) {
    const auto records = parse_delimited(read_file(manifest.path), manifest.delimiter, manifest.path);

    const std::size_t first_row = manifest.has_header ? 1 : 0;
    if (records.size() <= first_row) throw DataError(manifest.path + ": no data rows");
    const std::size_t width = records[first_row].size();
    const std::size_t n = records.size() - first_row;
    const std::size_t d = manifest.feature_columns.size();

    std::vector<double> values;
    values.reserve(n * d);
    std::vector<std::string> label_cells;
    if (manifest.label_column) label_cells.reserve(n);

    for (std::size_t r = first_row; r < records.size(); ++r) {
        const auto& row = records[r];
        if (row.size() != width) {
            throw DataError(manifest.path + ": row " + std::to_string(r + 1) + " has " +
                            std::to_string(row.size()) + " cells, expected " +
                            std::to_string(width));
        }
        for (const std::size_t col : manifest.feature_columns) {
            if (col >= row.size()) {
                throw DataError(manifest.path + ": row " + std::to_string(r + 1) +
                                ": feature column " + std::to_string(col) + " out of range");
            }
            values.push_back(parse_feature(row[col], manifest.path, r + 1, col));
        }
        if (manifest.label_column) {
            if (*manifest.label_column >= row.size()) {
                throw DataError(manifest.path + ": row " + std::to_string(r + 1) +
                                ": label column out of range");
            }
            label_cells.push_back(row[*manifest.label_column]);
        }
    }

    std::optional<std::vector<int>> labels;
    if (manifest.label_column) {
        std::vector<int> ids(label_cells.size());
        bool all_integer = true;
        for (const auto& cell : label_cells) {
            if (!parse_integer(trim(cell))) {
                all_integer = false;
                break;
            }
        }
        if (all_integer) {
            for (std::size_t i = 0; i < label_cells.size(); ++i) {
                ids[i] = static_cast<int>(*parse_integer(trim(label_cells[i])));
            }
        } else {
            std::unordered_map<std::string, int> seen;
            for (std::size_t i = 0; i < label_cells.size(); ++i) {
                const auto [it, inserted] =
                    seen.try_emplace(label_cells[i], static_cast<int>(seen.size()));
                ids[i] = it->second;
            }
        }
        labels = std::move(ids);
    }

    return {manifest.name, d, std::move(values), std::move(labels)};
}

void write_dataset_csv(const Dataset& data, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write file: " + path);
    for (std::size_t j = 0; j < data.dim(); ++j) out << (j ? ",f" : "f") << j;
    if (data.labels()) out << ",label";
    out << "\n";
    char buf[64];
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto x = data.point(i);
        for (std::size_t j = 0; j < data.dim(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", x[j]);
            out << (j ? "," : "") << buf;
        }
        if (data.labels()) out << ',' << (*data.labels())[i];
        out << "\n";
    }
}

std::string format_report(std::span<const ReportRow> rows, ReportFormat format,
                          const std::string& header_comment) {
    if (rows.empty()) throw std::invalid_argument("format_report: no rows");
    std::ostringstream out;
    if (format == ReportFormat::csv) {
        if (!header_comment.empty()) out << "# " << header_comment << "\n";
        out << "dataset,algorithm,k,runs,mean_loss,std_loss,min_loss,mean_nmi,pct_vs_baseline\n";
        for (const auto& row : rows) {
            out << row.dataset << ',' << row.algorithm << ',' << row.k << ',' << row.runs << ','
                << format_fixed(row.mean_loss) << ',' << format_fixed(row.std_loss) << ','
                << format_fixed(row.min_loss) << ',' << format_optional(row.mean_nmi) << ','
                << format_optional(row.pct_vs_baseline) << "\n";
        }
    } else {
        if (!header_comment.empty()) out << header_comment << "\n\n";
        out << "| dataset | algorithm | k | runs | mean_loss | std_loss | min_loss | mean_nmi | "
               "pct_vs_baseline |\n";
        out << "|---|---|---|---|---|---|---|---|---|\n";
        for (const auto& row : rows) {
            out << "| " << row.dataset << " | " << row.algorithm << " | " << row.k << " | "
                << row.runs << " | " << format_fixed(row.mean_loss) << " | "
                << format_fixed(row.std_loss) << " | " << format_fixed(row.min_loss) << " | "
                << format_optional(row.mean_nmi) << " | " << format_optional(row.pct_vs_baseline)
                << " |\n";
        }
    }
    return out.str();
}

void write_report(std::span<const ReportRow> rows, const std::string& path, ReportFormat format,
                  const std::string& header_comment) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write file: " + path);
    out << format_report(rows, format, header_comment);
}

std::vector<ReportRow> read_report_csv(const std::string& path) {
    const auto records = parse_delimited(read_file(path), ',', path);
    std::vector<ReportRow> rows;
    bool seen_header = false;
    for (std::size_t r = 0; r < records.size(); ++r) {
        const auto& rec = records[r];
        if (!rec.empty() && !rec[0].empty() && rec[0][0] == '#') continue;
        if (!seen_header) {
            seen_header = true;  // fixed column order; the header row itself is skipped
            continue;
        }
        if (rec.size() != 9) {
            throw DataError(path + ": row " + std::to_string(r + 1) + ": expected 9 columns");
        }
        const auto integer_cell = [&](const std::string& cell, std::size_t col) {
            const auto v = parse_integer(cell);
            if (!v) {
                throw DataError(path + ": row " + std::to_string(r + 1) + ", column " +
                                std::to_string(col) + ": expected an integer");
            }
            return *v;
        };
        ReportRow row;
        row.dataset = rec[0];
        row.algorithm = rec[1];
        row.k = static_cast<int>(integer_cell(rec[2], 2));
        row.runs = static_cast<std::size_t>(integer_cell(rec[3], 3));
        row.mean_loss = parse_feature(rec[4], path, r + 1, 4);
        row.std_loss = parse_feature(rec[5], path, r + 1, 5);
        row.min_loss = parse_feature(rec[6], path, r + 1, 6);
        if (rec[7] != "n/a") row.mean_nmi = parse_feature(rec[7], path, r + 1, 7);
        if (rec[8] != "n/a") row.pct_vs_baseline = parse_feature(rec[8], path, r + 1, 8);
        rows.push_back(std::move(row));
    }
    if (!seen_header) throw DataError(path + ": missing header row");
    return rows;
}

}  // namespace kmopt
