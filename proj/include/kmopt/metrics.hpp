#ifndef KMOPT_METRICS_HPP
#define KMOPT_METRICS_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace kmopt {

// Cross-tabulation of two labelings over the same points. Label values are
// compacted to dense ids in order of first appearance; rows index the first
// labeling, columns the second.
struct ContingencyTable {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::size_t> counts;  // row-major, rows * cols
    std::size_t n = 0;

    static ContingencyTable from_labels(std::span<const int> a, std::span<const int> b);

    std::size_t at(std::size_t r, std::size_t c) const { return counts[r * cols + c]; }
};

enum class NmiNormalization { arithmetic_mean, geometric_mean };

// Normalized mutual information in [0, 1], natural logarithms, normalized by
// the mean of the two label entropies. If both entropies are zero the
// labelings are compatible constants and the value is 1; if exactly one is
// zero it is 0.
double nmi(const ContingencyTable& table,
           NmiNormalization norm = NmiNormalization::arithmetic_mean);

double nmi(std::span<const int> predicted, std::span<const int> truth,
           NmiNormalization norm = NmiNormalization::arithmetic_mean);

// 100 * (other - baseline) / baseline; negative means `other` improved on the
// baseline. Returns NaN (reported as not applicable) when baseline <= 0.
double percent_difference(double baseline_loss, double other_loss);

}  // namespace kmopt

#endif  // KMOPT_METRICS_HPP
