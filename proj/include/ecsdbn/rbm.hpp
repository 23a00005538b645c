#ifndef ECSDBN_RBM_HPP
#define ECSDBN_RBM_HPP

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "ecsdbn/errors.hpp"
#include "ecsdbn/matrix.hpp"
#include "ecsdbn/rng.hpp"

namespace ecsdbn {

/// Contrastive-divergence training knobs.
struct CdConfig {
    double learning_rate = 0.01;
    std::size_t epochs = 100;
    std::size_t batch_size = 10;
    std::size_t gibbs_steps = 1;

    void validate() const {
        // learning_rate == 0 is legal and makes the update a no-op.
        if (!(learning_rate >= 0.0))
            throw ParamError("CdConfig: learning_rate must be >= 0");
        if (epochs < 1 || batch_size < 1 || gibbs_steps < 1)
            throw ParamError("CdConfig: epochs, batch_size and gibbs_steps must be >= 1");
    }
};

/// Restricted Boltzmann machine: one visible and one hidden layer joined by
/// a dense weight matrix, no intra-layer connections.
struct Rbm {
    Matrix weights; // n_visible x n_hidden
    std::vector<double> visible_bias;
    std::vector<double> hidden_bias;

    Rbm() = default;
    Rbm(std::size_t n_visible, std::size_t n_hidden)
        : weights(n_visible, n_hidden),
          visible_bias(n_visible, 0.0),
          hidden_bias(n_hidden, 0.0) {}

    std::size_t n_visible() const { return weights.rows; }
    std::size_t n_hidden() const { return weights.cols; }

    /// Small Gaussian weights, zero biases.
    static Rbm init_random(std::size_t n_visible, std::size_t n_hidden, RngStream rng,
                           double weight_stddev = 0.01) {
        Rbm rbm(n_visible, n_hidden);
        for (double& w : rbm.weights.values)
            w = sample_normal(rng, 0.0, weight_stddev);
        return rbm;
    }
};

/// P(h_j = 1 | v) for a batch of visible rows; entries strictly in (0,1).
inline Matrix hidden_given_visible(const Rbm& rbm, const Matrix& v) {
    if (v.cols != rbm.n_visible())
        throw ShapeError("hidden_given_visible: expected " + std::to_string(rbm.n_visible()) +
                         " visible units, got " + std::to_string(v.cols));
    Matrix act = matmul(v, rbm.weights);
    for (std::size_t n = 0; n < act.rows; ++n)
        for (std::size_t j = 0; j < act.cols; ++j)
            act(n, j) = sigmoid(act(n, j) + rbm.hidden_bias[j]);
    return act;
}

/// P(v_i = 1 | h) via the transposed weights.
inline Matrix visible_given_hidden(const Rbm& rbm, const Matrix& h) {
    if (h.cols != rbm.n_hidden())
        throw ShapeError("visible_given_hidden: expected " + std::to_string(rbm.n_hidden()) +
                         " hidden units, got " + std::to_string(h.cols));
    Matrix act(h.rows, rbm.n_visible());
    for (std::size_t n = 0; n < h.rows; ++n) {
        const double* hrow = h.row_ptr(n);
        double* arow = act.row_ptr(n);
        for (std::size_t j = 0; j < rbm.n_hidden(); ++j) {
            double hj = hrow[j];
            for (std::size_t i = 0; i < rbm.n_visible(); ++i)
                arow[i] += hj * rbm.weights(i, j);
        }
        for (std::size_t i = 0; i < rbm.n_visible(); ++i)
            arow[i] = sigmoid(arow[i] + rbm.visible_bias[i]);
    }
    return act;
}

namespace detail {

inline Matrix slice_rows(const Matrix& m, std::size_t begin, std::size_t end) {
    Matrix out(end - begin, m.cols);
    std::copy(m.row_ptr(begin), m.row_ptr(begin) + (end - begin) * m.cols,
              out.values.begin());
    return out;
}

} // namespace detail

/// CD-k on one mini-batch. Hidden states are Bernoulli draws in the data
/// phase; reconstructions stay mean-field. Gradient ascent on the
/// log-likelihood approximation, scaled by 1/batch.
inline void cd_update(Rbm& rbm, const Matrix& batch, const CdConfig& cfg, RngStream& rng) {
    const std::size_t b = batch.rows;
    const std::size_t nv = rbm.n_visible();
    const std::size_t nh = rbm.n_hidden();

    Matrix h0 = hidden_given_visible(rbm, batch);
    Matrix h_state(b, nh);
    for (std::size_t i = 0; i < h0.values.size(); ++i)
        h_state.values[i] = rng.next_double() < h0.values[i] ? 1.0 : 0.0;

    Matrix v_recon;
    Matrix hk;
    for (std::size_t step = 0; step < cfg.gibbs_steps; ++step) {
        v_recon = visible_given_hidden(rbm, h_state);
        hk = hidden_given_visible(rbm, v_recon);
        if (step + 1 < cfg.gibbs_steps)
            for (std::size_t i = 0; i < hk.values.size(); ++i)
                h_state.values[i] = rng.next_double() < hk.values[i] ? 1.0 : 0.0;
    }

    const double scale = cfg.learning_rate / static_cast<double>(b);
    for (std::size_t n = 0; n < b; ++n) {
        const double* v0 = batch.row_ptr(n);
        const double* vr = v_recon.row_ptr(n);
        const double* hp = h0.row_ptr(n);
        const double* hr = hk.row_ptr(n);
        for (std::size_t i = 0; i < nv; ++i) {
            double* wrow = rbm.weights.row_ptr(i);
            for (std::size_t j = 0; j < nh; ++j)
                wrow[j] += scale * (v0[i] * hp[j] - vr[i] * hr[j]);
        }
        for (std::size_t i = 0; i < nv; ++i)
            rbm.visible_bias[i] += scale * (v0[i] - vr[i]);
        for (std::size_t j = 0; j < nh; ++j)
            rbm.hidden_bias[j] += scale * (hp[j] - hr[j]);
    }
}

/// Mini-batched CD-k over cfg.epochs passes of the data, batches taken in
/// data order. Deterministic given (data order, seed).
inline Rbm cd_train(Rbm rbm, const Matrix& data, const CdConfig& cfg, RngStream rng) {
    cfg.validate();
    if (data.rows == 0)
        throw ParamError("cd_train: empty data");
    if (data.cols != rbm.n_visible())
        throw ShapeError("cd_train: data width does not match visible layer");

    const std::size_t batch_size = std::min(cfg.batch_size, data.rows);
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        RngStream epoch_rng = rng.derive(epoch);
        for (std::size_t begin = 0; begin < data.rows; begin += batch_size) {
            std::size_t end = std::min(begin + batch_size, data.rows);
            Matrix batch = detail::slice_rows(data, begin, end);
            cd_update(rbm, batch, cfg, epoch_rng);
        }
        if (!rbm.weights.all_finite())
            throw DataError("cd_train: parameters diverged to non-finite values");
    }
    return rbm;
}

/// Mean squared error between data and its one-step mean-field
/// reconstruction sigmoid(P(h|v) W^T + b_v).
inline double reconstruction_error(const Rbm& rbm, const Matrix& data) {
    Matrix h = hidden_given_visible(rbm, data);
    Matrix v = visible_given_hidden(rbm, h);
    double sum = 0.0;
    for (std::size_t i = 0; i < data.values.size(); ++i) {
        double d = data.values[i] - v.values[i];
        sum += d * d;
    }
    return sum / static_cast<double>(data.values.size());
}

} // namespace ecsdbn

#endif
