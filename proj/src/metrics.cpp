#include "kmopt/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace kmopt {

namespace {

std::vector<std::size_t> compact_labels(std::span<const int> labels, std::size_t& out_count) {
    std::unordered_map<int, std::size_t> ids;
    std::vector<std::size_t> dense(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const auto [it, inserted] = ids.try_emplace(labels[i], ids.size());
        dense[i] = it->second;
    }
    out_count = ids.size();
    return dense;
}

// Entropy of a marginal count vector, summed over sorted counts so the result
// is invariant under any relabeling of the input.
double entropy_nats(std::vector<std::size_t> counts, std::size_t n) {
    std::sort(counts.begin(), counts.end());
    const auto dn = static_cast<double>(n);
    double h = 0.0;
    for (std::size_t c : counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / dn;
        h -= p * std::log(p);
    }
    return h;
}

}  // namespace

ContingencyTable ContingencyTable::from_labels(std::span<const int> a, std::span<const int> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("ContingencyTable: label sequences differ in length");
    }
    if (a.empty()) throw std::invalid_argument("ContingencyTable: empty label sequences");
    ContingencyTable t;
    const auto da = compact_labels(a, t.rows);
    const auto db = compact_labels(b, t.cols);
    t.n = a.size();
    t.counts.assign(t.rows * t.cols, 0);
    for (std::size_t i = 0; i < a.size(); ++i) ++t.counts[da[i] * t.cols + db[i]];
    return t;
}

double nmi(const ContingencyTable& t, NmiNormalization norm) {
    std::vector<std::size_t> row_sums(t.rows, 0);
    std::vector<std::size_t> col_sums(t.cols, 0);
    for (std::size_t r = 0; r < t.rows; ++r) {
        for (std::size_t c = 0; c < t.cols; ++c) {
            row_sums[r] += t.at(r, c);
            col_sums[c] += t.at(r, c);
        }
    }
    const double hu = entropy_nats(row_sums, t.n);
    const double hv = entropy_nats(col_sums, t.n);
    if (hu == 0.0 && hv == 0.0) return 1.0;
    if (hu == 0.0 || hv == 0.0) return 0.0;

    // Mutual-information terms are accumulated in an order that depends only
    // on the cell count and the sorted marginal pair, never on label ids or
    // argument order, so relabeling either argument and swapping the
    // arguments both reproduce the value bit for bit.
    struct Term {
        std::size_t nij, lo, hi;
        auto operator<=>(const Term&) const = default;
    };
    std::vector<Term> terms;
    terms.reserve(t.counts.size());
    for (std::size_t r = 0; r < t.rows; ++r) {
        for (std::size_t c = 0; c < t.cols; ++c) {
            if (t.at(r, c) == 0) continue;
            terms.push_back({t.at(r, c), std::min(row_sums[r], col_sums[c]),
                             std::max(row_sums[r], col_sums[c])});
        }
    }
    std::sort(terms.begin(), terms.end());
    const auto dn = static_cast<double>(t.n);
    double mi = 0.0;
    for (const Term& term : terms) {
        const double pij = static_cast<double>(term.nij) / dn;
        const double pa = static_cast<double>(term.lo) / dn;
        const double pb = static_cast<double>(term.hi) / dn;
        mi += pij * std::log(pij / (pa * pb));
    }
    if (mi < 0.0) mi = 0.0;  // tiny negative rounding residue
    const double denom =
        norm == NmiNormalization::arithmetic_mean ? (hu + hv) / 2.0 : std::sqrt(hu * hv);
    return mi / denom;
}

double nmi(std::span<const int> predicted, std::span<const int> truth, NmiNormalization norm) {
    return nmi(ContingencyTable::from_labels(predicted, truth), norm);
}

double percent_difference(double baseline_loss, double other_loss) {
    if (!(baseline_loss > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    return 100.0 * (other_loss - baseline_loss) / baseline_loss;
}

}  // namespace kmopt
