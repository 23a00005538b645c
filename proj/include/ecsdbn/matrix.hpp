#ifndef ECSDBN_MATRIX_HPP
#define ECSDBN_MATRIX_HPP

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "ecsdbn/errors.hpp"

namespace ecsdbn {

/// Dense row-major matrix of doubles. The one container used for weights,
/// activations and data batches throughout the library.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values; // length rows*cols, row-major

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0)
        : rows(r), cols(c), values(r * c, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1.0;
        return m;
    }

    double& operator()(std::size_t i, std::size_t j) { return values[i * cols + j]; }
    const double& operator()(std::size_t i, std::size_t j) const { return values[i * cols + j]; }

    double* row_ptr(std::size_t i) { return values.data() + i * cols; }
    const double* row_ptr(std::size_t i) const { return values.data() + i * cols; }

    bool all_finite() const {
        for (double v : values)
            if (!std::isfinite(v))
                return false;
        return true;
    }
};

/// Standard matrix product. Requires a.cols == b.rows.
inline Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols != b.rows)
        throw ShapeError("matmul: " + std::to_string(a.rows) + "x" + std::to_string(a.cols) +
                         " times " + std::to_string(b.rows) + "x" + std::to_string(b.cols));
    Matrix out(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        const double* arow = a.row_ptr(i);
        double* orow = out.row_ptr(i);
        for (std::size_t k = 0; k < a.cols; ++k) {
            double aik = arow[k];
            const double* brow = b.row_ptr(k);
            for (std::size_t j = 0; j < b.cols; ++j)
                orow[j] += aik * brow[j];
        }
    }
    return out;
}

/// Numerically stable logistic function; output in (0,1) for finite x and
/// saturating to {0,1} only in the last ulp.
inline double sigmoid(double x) {
    if (x >= 0.0) {
        return 1.0 / (1.0 + std::exp(-x));
    }
    double e = std::exp(x);
    return e / (1.0 + e);
}

/// Elementwise sigmoid.
inline Matrix sigmoid_map(const Matrix& m) {
    Matrix out(m.rows, m.cols);
    for (std::size_t i = 0; i < m.values.size(); ++i)
        out.values[i] = sigmoid(m.values[i]);
    return out;
}

} // namespace ecsdbn

#endif
