#ifndef ECSDBN_DBN_HPP
#define ECSDBN_DBN_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "ecsdbn/cost_model.hpp"
#include "ecsdbn/detail/text.hpp"
#include "ecsdbn/errors.hpp"
#include "ecsdbn/matrix.hpp"
#include "ecsdbn/rbm.hpp"
#include "ecsdbn/rng.hpp"

namespace ecsdbn {

struct DbnConfig {
    std::vector<std::size_t> layer_sizes = {25, 25}; // hidden widths, bottom-up
    std::size_t n_classes = 2;
    CdConfig pretrain{};             // also supplies the fine-tuning batch size
    double finetune_lr = 0.01;
    std::size_t finetune_epochs = 300;
    // Weight init scale. The datasets this targets are a few hundred rows,
    // so an epoch is only a handful of CD/SGD updates; the textbook 0.01
    // init never amplifies past the class prior at these learning rates.
    double weight_init_stddev = 0.5;
    std::uint64_t seed = 0;

    void validate() const {
        if (layer_sizes.empty())
            throw ParamError("DbnConfig: need at least one hidden layer");
        for (std::size_t w : layer_sizes)
            if (w < 1)
                throw ParamError("DbnConfig: hidden width must be >= 1");
        if (n_classes < 2)
            throw ParamError("DbnConfig: n_classes must be >= 2");
        if (!(finetune_lr >= 0.0))
            throw ParamError("DbnConfig: finetune_lr must be >= 0");
        if (!(weight_init_stddev > 0.0))
            throw ParamError("DbnConfig: weight_init_stddev must be > 0");
        pretrain.validate();
    }
};

/// Hidden widths drawn uniformly from [5, 50], the randomized-architecture
/// benchmark mode.
inline std::vector<std::size_t> random_layer_sizes(RngStream& rng, std::size_t n_layers = 2) {
    std::vector<std::size_t> sizes(n_layers);
    for (auto& s : sizes)
        s = 5 + static_cast<std::size_t>(rng.next_below(46));
    return sizes;
}

/// Stack of RBMs feeding a softmax output layer. Trained models are
/// immutable values; prediction is pure and thread-safe.
struct Dbn {
    std::vector<Rbm> rbm_stack;
    Matrix softmax_weights; // top hidden width x K
    std::vector<double> softmax_bias;

    std::size_t input_width() const {
        return rbm_stack.empty() ? 0 : rbm_stack.front().n_visible();
    }
    std::size_t n_classes() const { return softmax_bias.size(); }
};

/// Mean-field activations of the top hidden layer.
inline Matrix top_hidden(const Dbn& dbn, const Matrix& x) {
    if (x.cols != dbn.input_width())
        throw ShapeError("dbn: expected " + std::to_string(dbn.input_width()) +
                         " input features, got " + std::to_string(x.cols));
    Matrix a = x;
    for (const Rbm& rbm : dbn.rbm_stack)
        a = hidden_given_visible(rbm, a);
    return a;
}

namespace detail {

/// Row-wise softmax with max subtraction.
inline void softmax_rows(Matrix& logits) {
    for (std::size_t n = 0; n < logits.rows; ++n) {
        double* row = logits.row_ptr(n);
        double mx = row[0];
        for (std::size_t j = 1; j < logits.cols; ++j)
            mx = std::max(mx, row[j]);
        double sum = 0.0;
        for (std::size_t j = 0; j < logits.cols; ++j) {
            row[j] = std::exp(row[j] - mx);
            sum += row[j];
        }
        for (std::size_t j = 0; j < logits.cols; ++j)
            row[j] /= sum;
    }
}

} // namespace detail

/// Class posteriors, one row per sample; rows sum to 1.
inline Matrix predict_proba(const Dbn& dbn, const Matrix& x) {
    Matrix a = top_hidden(dbn, x);
    Matrix logits = matmul(a, dbn.softmax_weights);
    for (std::size_t n = 0; n < logits.rows; ++n)
        for (std::size_t j = 0; j < logits.cols; ++j)
            logits(n, j) += dbn.softmax_bias[j];
    detail::softmax_rows(logits);
    return logits;
}

/// Posterior argmax; ties go to the smallest class index.
inline std::vector<int> predict(const Dbn& dbn, const Matrix& x) {
    return argmax_rows(predict_proba(dbn, x));
}

/// Greedy layer-wise pre-training: each RBM learns the mean-field hidden
/// activations of the layer below. The softmax head stays at its zero
/// initialization (uniform posteriors).
inline Dbn pretrain(const DbnConfig& cfg, const Matrix& x) {
    cfg.validate();
    if (x.rows == 0)
        throw ParamError("pretrain: empty data");

    RngStream root(cfg.seed);
    Dbn dbn;
    Matrix layer_input = x;
    std::size_t width_in = x.cols;
    for (std::size_t l = 0; l < cfg.layer_sizes.size(); ++l) {
        std::size_t width_out = cfg.layer_sizes[l];
        Rbm rbm = Rbm::init_random(width_in, width_out, root.derive(2 * l),
                                   cfg.weight_init_stddev);
        rbm = cd_train(std::move(rbm), layer_input, cfg.pretrain, root.derive(2 * l + 1));
        layer_input = hidden_given_visible(rbm, layer_input);
        dbn.rbm_stack.push_back(std::move(rbm));
        width_in = width_out;
    }
    dbn.softmax_weights = Matrix(width_in, cfg.n_classes);
    dbn.softmax_bias.assign(cfg.n_classes, 0.0);
    return dbn;
}

/// Gradients of the mean cross-entropy over one batch, for every layer plus
/// the softmax head.
struct DbnGradients {
    std::vector<Matrix> weight_grads;              // per RBM layer
    std::vector<std::vector<double>> bias_grads;   // per RBM hidden bias
    Matrix softmax_weight_grad;
    std::vector<double> softmax_bias_grad;
    double loss = 0.0;
};

inline DbnGradients compute_gradients(const Dbn& dbn, const Matrix& x,
                                      const std::vector<int>& y) {
    const std::size_t batch = x.rows;
    const std::size_t n_layers = dbn.rbm_stack.size();
    const std::size_t n_classes = dbn.n_classes();

    // Forward pass, keeping every activation for backprop.
    std::vector<Matrix> activations;
    activations.reserve(n_layers + 1);
    activations.push_back(x);
    for (const Rbm& rbm : dbn.rbm_stack)
        activations.push_back(hidden_given_visible(rbm, activations.back()));

    Matrix probs = activations.back();
    probs = matmul(probs, dbn.softmax_weights);
    for (std::size_t n = 0; n < batch; ++n)
        for (std::size_t j = 0; j < n_classes; ++j)
            probs(n, j) += dbn.softmax_bias[j];
    detail::softmax_rows(probs);

    DbnGradients g;
    g.loss = 0.0;
    Matrix dlogits(batch, n_classes);
    for (std::size_t n = 0; n < batch; ++n) {
        int label = y[n];
        if (label < 0 || static_cast<std::size_t>(label) >= n_classes)
            throw DataError("finetune: label out of range at sample " + std::to_string(n));
        g.loss -= std::log(std::max(probs(n, static_cast<std::size_t>(label)), 1e-300));
        for (std::size_t j = 0; j < n_classes; ++j)
            dlogits(n, j) = (probs(n, j) - (static_cast<std::size_t>(label) == j ? 1.0 : 0.0)) /
                            static_cast<double>(batch);
    }
    g.loss /= static_cast<double>(batch);

    const Matrix& top = activations[n_layers];
    g.softmax_weight_grad = Matrix(top.cols, n_classes);
    for (std::size_t n = 0; n < batch; ++n)
        for (std::size_t i = 0; i < top.cols; ++i)
            for (std::size_t j = 0; j < n_classes; ++j)
                g.softmax_weight_grad(i, j) += top(n, i) * dlogits(n, j);
    g.softmax_bias_grad.assign(n_classes, 0.0);
    for (std::size_t n = 0; n < batch; ++n)
        for (std::size_t j = 0; j < n_classes; ++j)
            g.softmax_bias_grad[j] += dlogits(n, j);

    // delta = gradient w.r.t. the current layer's activations.
    Matrix delta(batch, top.cols);
    for (std::size_t n = 0; n < batch; ++n)
        for (std::size_t i = 0; i < top.cols; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n_classes; ++j)
                s += dlogits(n, j) * dbn.softmax_weights(i, j);
            delta(n, i) = s;
        }

    g.weight_grads.resize(n_layers);
    g.bias_grads.resize(n_layers);
    for (std::size_t l = n_layers; l-- > 0;) {
        const Matrix& out = activations[l + 1];
        const Matrix& in = activations[l];
        Matrix dz(batch, out.cols);
        for (std::size_t n = 0; n < batch; ++n)
            for (std::size_t j = 0; j < out.cols; ++j)
                dz(n, j) = delta(n, j) * out(n, j) * (1.0 - out(n, j));

        g.weight_grads[l] = Matrix(in.cols, out.cols);
        for (std::size_t n = 0; n < batch; ++n)
            for (std::size_t i = 0; i < in.cols; ++i)
                for (std::size_t j = 0; j < out.cols; ++j)
                    g.weight_grads[l](i, j) += in(n, i) * dz(n, j);
        g.bias_grads[l].assign(out.cols, 0.0);
        for (std::size_t n = 0; n < batch; ++n)
            for (std::size_t j = 0; j < out.cols; ++j)
                g.bias_grads[l][j] += dz(n, j);

        if (l > 0) {
            const Rbm& rbm = dbn.rbm_stack[l];
            Matrix next(batch, in.cols);
            for (std::size_t n = 0; n < batch; ++n)
                for (std::size_t i = 0; i < in.cols; ++i) {
                    double s = 0.0;
                    for (std::size_t j = 0; j < out.cols; ++j)
                        s += dz(n, j) * rbm.weights(i, j);
                    next(n, i) = s;
                }
            delta = std::move(next);
        }
    }
    return g;
}

/// Mean cross-entropy of the current model on (x, y).
inline double cross_entropy(const Dbn& dbn, const Matrix& x, const std::vector<int>& y) {
    Matrix probs = predict_proba(dbn, x);
    double loss = 0.0;
    for (std::size_t n = 0; n < x.rows; ++n) {
        int label = y[n];
        if (label < 0 || static_cast<std::size_t>(label) >= dbn.n_classes())
            throw DataError("cross_entropy: label out of range");
        loss -= std::log(std::max(probs(n, static_cast<std::size_t>(label)), 1e-300));
    }
    return loss / static_cast<double>(x.rows);
}

/// Supervised fine-tuning: mini-batch SGD on the cross-entropy through all
/// layers and the softmax head, batches in data order.
inline Dbn finetune(Dbn dbn, const Matrix& x, const std::vector<int>& y,
                    const DbnConfig& cfg) {
    cfg.validate();
    if (x.rows != y.size())
        throw ShapeError("finetune: feature/label count mismatch");
    for (int label : y)
        if (label < 0 || static_cast<std::size_t>(label) >= dbn.n_classes())
            throw DataError("finetune: label out of range");

    const std::size_t batch_size = std::min(cfg.pretrain.batch_size, x.rows);
    for (std::size_t epoch = 0; epoch < cfg.finetune_epochs; ++epoch) {
        for (std::size_t begin = 0; begin < x.rows; begin += batch_size) {
            std::size_t end = std::min(begin + batch_size, x.rows);
            Matrix bx = detail::slice_rows(x, begin, end);
            std::vector<int> by(y.begin() + static_cast<std::ptrdiff_t>(begin),
                                y.begin() + static_cast<std::ptrdiff_t>(end));
            DbnGradients g = compute_gradients(dbn, bx, by);

            const double lr = cfg.finetune_lr;
            for (std::size_t l = 0; l < dbn.rbm_stack.size(); ++l) {
                Rbm& rbm = dbn.rbm_stack[l];
                for (std::size_t i = 0; i < rbm.weights.values.size(); ++i)
                    rbm.weights.values[i] -= lr * g.weight_grads[l].values[i];
                for (std::size_t j = 0; j < rbm.hidden_bias.size(); ++j)
                    rbm.hidden_bias[j] -= lr * g.bias_grads[l][j];
            }
            for (std::size_t i = 0; i < dbn.softmax_weights.values.size(); ++i)
                dbn.softmax_weights.values[i] -= lr * g.softmax_weight_grad.values[i];
            for (std::size_t j = 0; j < dbn.softmax_bias.size(); ++j)
                dbn.softmax_bias[j] -= lr * g.softmax_bias_grad[j];
        }
        if (!dbn.softmax_weights.all_finite())
            throw DataError("finetune: parameters diverged to non-finite values");
    }
    return dbn;
}

// ---------------------------------------------------------------------------
// Serialization. Versioned line-oriented text; doubles are written in
// shortest round-trip form, so save/load reproduces the model bit for bit.

namespace detail {

inline void write_values(std::ostream& os, const std::vector<double>& vals) {
    for (std::size_t i = 0; i < vals.size(); ++i)
        os << (i ? " " : "") << format_double(vals[i]);
    os << '\n';
}

inline std::vector<double> read_values(std::istream& is, std::size_t count,
                                       const char* what) {
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::string tok;
        if (!(is >> tok))
            throw FormatError(std::string("dbn load: truncated ") + what);
        bool ok = false;
        out[i] = parse_double(tok, ok);
        if (!ok)
            throw FormatError(std::string("dbn load: bad number in ") + what);
    }
    return out;
}

} // namespace detail

inline void save_dbn(const Dbn& dbn, std::ostream& os) {
    os << "ecsdbn-dbn 1\n";
    os << "layers " << dbn.rbm_stack.size() << '\n';
    for (const Rbm& rbm : dbn.rbm_stack) {
        os << "rbm " << rbm.n_visible() << ' ' << rbm.n_hidden() << '\n';
        detail::write_values(os, rbm.weights.values);
        detail::write_values(os, rbm.visible_bias);
        detail::write_values(os, rbm.hidden_bias);
    }
    os << "softmax " << dbn.softmax_weights.rows << ' ' << dbn.softmax_weights.cols << '\n';
    detail::write_values(os, dbn.softmax_weights.values);
    detail::write_values(os, dbn.softmax_bias);
}

inline Dbn load_dbn(std::istream& is) {
    std::string magic;
    int version = 0;
    if (!(is >> magic >> version) || magic != "ecsdbn-dbn" || version != 1)
        throw FormatError("dbn load: unrecognized header");
    std::string key;
    std::size_t n_layers = 0;
    if (!(is >> key >> n_layers) || key != "layers")
        throw FormatError("dbn load: expected layer count");

    Dbn dbn;
    for (std::size_t l = 0; l < n_layers; ++l) {
        std::size_t nv = 0, nh = 0;
        if (!(is >> key >> nv >> nh) || key != "rbm")
            throw FormatError("dbn load: expected rbm block");
        Rbm rbm(nv, nh);
        rbm.weights.values = detail::read_values(is, nv * nh, "rbm weights");
        rbm.visible_bias = detail::read_values(is, nv, "visible bias");
        rbm.hidden_bias = detail::read_values(is, nh, "hidden bias");
        dbn.rbm_stack.push_back(std::move(rbm));
    }
    std::size_t rows = 0, cols = 0;
    if (!(is >> key >> rows >> cols) || key != "softmax")
        throw FormatError("dbn load: expected softmax block");
    dbn.softmax_weights = Matrix(rows, cols);
    dbn.softmax_weights.values = detail::read_values(is, rows * cols, "softmax weights");
    dbn.softmax_bias = detail::read_values(is, cols, "softmax bias");
    return dbn;
}

} // namespace ecsdbn

#endif
