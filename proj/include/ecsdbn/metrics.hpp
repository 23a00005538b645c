#ifndef ECSDBN_METRICS_HPP
#define ECSDBN_METRICS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "ecsdbn/errors.hpp"

namespace ecsdbn {

/// K x K contingency table; entry (i, j) counts samples of true class i
/// predicted as class j.
struct ConfusionMatrix {
    std::size_t n_classes = 0;
    std::vector<long long> counts; // row-major K*K

    ConfusionMatrix() = default;
    explicit ConfusionMatrix(std::size_t k) : n_classes(k), counts(k * k, 0) {}

    long long& at(std::size_t i, std::size_t j) { return counts[i * n_classes + j]; }
    long long at(std::size_t i, std::size_t j) const { return counts[i * n_classes + j]; }

    long long total() const {
        return std::accumulate(counts.begin(), counts.end(), 0LL);
    }
    long long row_sum(std::size_t i) const {
        long long s = 0;
        for (std::size_t j = 0; j < n_classes; ++j)
            s += at(i, j);
        return s;
    }
    long long col_sum(std::size_t j) const {
        long long s = 0;
        for (std::size_t i = 0; i < n_classes; ++i)
            s += at(i, j);
        return s;
    }
};

/// Tabulate predictions against ground truth.
inline ConfusionMatrix confusion(const std::vector<int>& y_true,
                                 const std::vector<int>& y_pred,
                                 std::size_t n_classes) {
    if (y_true.size() != y_pred.size())
        throw ShapeError("confusion: label vectors differ in length");
    ConfusionMatrix cm(n_classes);
    for (std::size_t n = 0; n < y_true.size(); ++n) {
        int t = y_true[n], p = y_pred[n];
        if (t < 0 || p < 0 || static_cast<std::size_t>(t) >= n_classes ||
            static_cast<std::size_t>(p) >= n_classes)
            throw DataError("confusion: label out of range at sample " + std::to_string(n));
        ++cm.at(static_cast<std::size_t>(t), static_cast<std::size_t>(p));
    }
    return cm;
}

/// Fraction of correctly classified samples, trace/total.
inline double accuracy(const ConfusionMatrix& cm) {
    long long tot = cm.total();
    if (tot == 0)
        throw DegenerateInputError("accuracy: empty confusion matrix");
    long long diag = 0;
    for (std::size_t i = 0; i < cm.n_classes; ++i)
        diag += cm.at(i, i);
    return static_cast<double>(diag) / static_cast<double>(tot);
}

/// Geometric mean of per-class recalls. For two classes this is
/// sqrt(TP/(TP+FN) * TN/(TN+FP)); zero as soon as one class is entirely
/// misclassified. Requires every class to have at least one true sample.
inline double gmean(const ConfusionMatrix& cm) {
    if (cm.n_classes == 0 || cm.total() == 0)
        throw DegenerateInputError("gmean: empty confusion matrix");
    double log_sum = 0.0;
    for (std::size_t i = 0; i < cm.n_classes; ++i) {
        long long support = cm.row_sum(i);
        if (support == 0)
            throw DegenerateInputError("gmean: class " + std::to_string(i) +
                                       " has zero support");
        double recall_i = static_cast<double>(cm.at(i, i)) / static_cast<double>(support);
        if (recall_i == 0.0)
            return 0.0;
        log_sum += std::log(recall_i);
    }
    return std::exp(log_sum / static_cast<double>(cm.n_classes));
}

// Binary-style metrics below reduce a K x K table one-vs-rest around the
// positive class (the minority class of an imbalanced set, index 1 by the
// loader's convention). Zero denominators yield 0 and raise *degenerate so
// downstream consumers that need a total order never see NaN.

inline double precision(const ConfusionMatrix& cm, std::size_t positive = 1,
                        bool* degenerate = nullptr) {
    long long tp = cm.at(positive, positive);
    long long denom = cm.col_sum(positive);
    if (degenerate)
        *degenerate = (denom == 0);
    return denom == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(denom);
}

inline double recall(const ConfusionMatrix& cm, std::size_t positive = 1,
                     bool* degenerate = nullptr) {
    long long tp = cm.at(positive, positive);
    long long denom = cm.row_sum(positive);
    if (degenerate)
        *degenerate = (denom == 0);
    return denom == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(denom);
}

inline double f1(const ConfusionMatrix& cm, std::size_t positive = 1,
                 bool* degenerate = nullptr) {
    bool dp = false, dr = false;
    double p = precision(cm, positive, &dp);
    double r = recall(cm, positive, &dr);
    bool deg = dp || dr || (p + r == 0.0);
    if (degenerate)
        *degenerate = deg;
    return (p + r == 0.0) ? 0.0 : 2.0 * p * r / (p + r);
}

/// Rank-based (Mann-Whitney) AUC with midrank tie handling. `scores` are
/// positive-class scores; `y_true` entries equal to `positive` count as
/// positives, everything else as negatives.
inline double auc(const std::vector<int>& y_true, const std::vector<double>& scores,
                  int positive = 1) {
    if (y_true.size() != scores.size())
        throw ShapeError("auc: label and score vectors differ in length");
    const std::size_t n = y_true.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    std::vector<double> rank(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && scores[order[j + 1]] == scores[order[i]])
            ++j;
        double midrank = 0.5 * static_cast<double>((i + 1) + (j + 1));
        for (std::size_t k = i; k <= j; ++k)
            rank[order[k]] = midrank;
        i = j + 1;
    }

    double rank_sum_pos = 0.0;
    std::size_t n_pos = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (y_true[k] == positive) {
            rank_sum_pos += rank[k];
            ++n_pos;
        }
    }
    std::size_t n_neg = n - n_pos;
    if (n_pos == 0 || n_neg == 0)
        throw DegenerateInputError("auc: both classes must be present");
    double u = rank_sum_pos - 0.5 * static_cast<double>(n_pos) * static_cast<double>(n_pos + 1);
    return u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

/// Majority count over minority count, taken over the two most populous
/// classes. Errors when fewer than two classes are present.
inline double imbalance_ratio(const std::vector<int>& y) {
    std::map<int, long long> freq;
    for (int v : y)
        ++freq[v];
    if (freq.size() < 2)
        throw DegenerateInputError("imbalance_ratio: need at least two classes");
    std::vector<long long> counts;
    counts.reserve(freq.size());
    for (const auto& [label, c] : freq)
        counts.push_back(c);
    std::sort(counts.begin(), counts.end(), std::greater<>());
    return static_cast<double>(counts[0]) / static_cast<double>(counts[1]);
}

} // namespace ecsdbn

#endif
