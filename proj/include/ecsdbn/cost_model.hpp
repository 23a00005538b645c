#ifndef ECSDBN_COST_MODEL_HPP
#define ECSDBN_COST_MODEL_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "ecsdbn/detail/text.hpp"
#include "ecsdbn/errors.hpp"
#include "ecsdbn/matrix.hpp"

namespace ecsdbn {

/// One misclassification cost per class, each in [0,1]. Class j's posterior
/// is retained with factor (1 - costs[j]) before the argmax decision, so a
/// costly class needs proportionally more posterior mass to be predicted.
struct CostVector {
    std::vector<double> costs;

    CostVector() = default;
    explicit CostVector(std::vector<double> c) : costs(std::move(c)) {
        for (double v : costs)
            if (!(v >= 0.0 && v <= 1.0))
                throw ParamError("CostVector: cost outside [0,1]");
    }

    std::size_t n_classes() const { return costs.size(); }
};

/// Full K x K cost table C[i][j]: cost of predicting j when the truth is i.
/// Diagonal is zero. Used only by the expected/overall risk diagnostics.
struct CostMatrix {
    std::size_t n_classes = 0;
    std::vector<double> entries; // row-major K*K

    CostMatrix() = default;
    explicit CostMatrix(std::size_t k) : n_classes(k), entries(k * k, 0.0) {}

    double& at(std::size_t i, std::size_t j) { return entries[i * n_classes + j]; }
    double at(std::size_t i, std::size_t j) const { return entries[i * n_classes + j]; }

    void validate() const {
        for (std::size_t i = 0; i < n_classes; ++i) {
            for (std::size_t j = 0; j < n_classes; ++j) {
                double v = at(i, j);
                if (!(v >= 0.0 && v <= 1.0))
                    throw ParamError("CostMatrix: entry outside [0,1]");
                if (i == j && v != 0.0)
                    throw ParamError("CostMatrix: nonzero diagonal entry");
            }
        }
    }
};

/// Scale posterior column j by (1 - c[j]). Rows are deliberately not
/// renormalized; the decision rule is an argmax, so normalization would not
/// change it.
inline Matrix apply_costs(const Matrix& probs, const CostVector& c) {
    if (probs.cols != c.n_classes())
        throw ShapeError("apply_costs: " + std::to_string(probs.cols) +
                         " classes vs " + std::to_string(c.n_classes()) + " costs");
    Matrix out(probs.rows, probs.cols);
    for (std::size_t n = 0; n < probs.rows; ++n)
        for (std::size_t j = 0; j < probs.cols; ++j)
            out(n, j) = probs(n, j) * (1.0 - c.costs[j]);
    return out;
}

/// Row-wise argmax with ties broken toward the smallest class index.
inline std::vector<int> argmax_rows(const Matrix& m) {
    std::vector<int> labels(m.rows, 0);
    for (std::size_t n = 0; n < m.rows; ++n) {
        std::size_t best = 0;
        for (std::size_t j = 1; j < m.cols; ++j)
            if (m(n, j) > m(n, best))
                best = j;
        labels[n] = static_cast<int>(best);
    }
    return labels;
}

/// Cost-adjusted prediction: argmax over apply_costs(probs, c).
inline std::vector<int> predict_with_costs(const Matrix& probs, const CostVector& c) {
    return argmax_rows(apply_costs(probs, c));
}

/// Expected cost of deciding class i for one sample:
/// sum over j != i of P(j|x) * C[i][j].
inline double expected_risk(const std::vector<double>& probs_row, const CostMatrix& cm,
                            std::size_t i) {
    if (probs_row.size() != cm.n_classes)
        throw ShapeError("expected_risk: posterior length does not match cost matrix");
    if (i >= cm.n_classes)
        throw ParamError("expected_risk: class index out of range");
    double risk = 0.0;
    for (std::size_t j = 0; j < cm.n_classes; ++j)
        if (j != i)
            risk += probs_row[j] * cm.at(i, j);
    return risk;
}

/// Dataset-level risk: sum over samples n and decisions i of
/// expected_risk(n, i) weighted by the sample prior.
inline double overall_risk(const Matrix& probs, const CostMatrix& cm,
                           const std::vector<double>& priors) {
    if (priors.size() != probs.rows)
        throw ShapeError("overall_risk: priors length must equal sample count");
    if (probs.cols != cm.n_classes)
        throw ShapeError("overall_risk: posterior width does not match cost matrix");
    double total = 0.0;
    for (std::size_t n = 0; n < probs.rows; ++n) {
        std::vector<double> row(probs.row_ptr(n), probs.row_ptr(n) + probs.cols);
        for (std::size_t i = 0; i < cm.n_classes; ++i)
            total += expected_risk(row, cm, i) * priors[n];
    }
    return total;
}

/// Comma-separated decimal form used in result files.
inline std::string to_csv_field(const CostVector& c) {
    std::string out;
    for (std::size_t j = 0; j < c.costs.size(); ++j) {
        if (j > 0)
            out += ',';
        out += detail::format_double(c.costs[j]);
    }
    return out;
}

inline CostVector cost_vector_from_csv_field(const std::string& s) {
    std::vector<double> costs;
    if (!detail::trim(s).empty()) {
        for (const std::string& field : detail::split(s, ',')) {
            bool ok = false;
            double v = detail::parse_double(detail::trim(field), ok);
            if (!ok)
                throw FormatError("CostVector: bad decimal '" + field + "'");
            costs.push_back(v);
        }
    }
    return CostVector(std::move(costs));
}

} // namespace ecsdbn

#endif
