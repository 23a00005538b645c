#ifndef ECSDBN_ECS_TRAINER_HPP
#define ECSDBN_ECS_TRAINER_HPP

#include <cstddef>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "ecsdbn/adaptive_de.hpp"
#include "ecsdbn/cost_model.hpp"
#include "ecsdbn/dbn.hpp"
#include "ecsdbn/errors.hpp"
#include "ecsdbn/metrics.hpp"
#include "ecsdbn/rng.hpp"

namespace ecsdbn {

/// A trained DBN frozen together with the evolved per-class cost vector.
struct EcsDbnModel {
    Dbn dbn;
    CostVector best_costs;
    double training_fitness = 0.0;    // training G-mean of best_costs
    std::vector<double> de_trace;     // best-so-far fitness per generation
};

/// Fitness of a chromosome against cached training posteriors: the G-mean
/// of the cost-adjusted predictions. Pure in the chromosome, so candidate
/// evaluations can run in any order.
inline double cost_vector_fitness(const Matrix& cached_probs, const std::vector<int>& y,
                                  const std::vector<double>& genes) {
    CostVector c(genes);
    std::vector<int> preds = predict_with_costs(cached_probs, c);
    return gmean(confusion(y, preds, cached_probs.cols));
}

/// Full training pipeline: pre-train and fine-tune one DBN, cache its
/// training posteriors, then evolve a cost vector maximizing the training
/// G-mean of the cost-adjusted predictions. The network is trained exactly
/// once; the search only moves the decision thresholds.
inline EcsDbnModel train_ecs_dbn(const Matrix& train_x, const std::vector<int>& train_y,
                                 const DbnConfig& dbn_cfg, const DeParams& de_params,
                                 RngStream rng) {
    dbn_cfg.validate();
    if (train_x.rows != train_y.size())
        throw ShapeError("train_ecs_dbn: feature/label count mismatch");

    std::vector<std::size_t> class_counts(dbn_cfg.n_classes, 0);
    for (int label : train_y) {
        if (label < 0 || static_cast<std::size_t>(label) >= dbn_cfg.n_classes)
            throw DataError("train_ecs_dbn: label out of range");
        ++class_counts[static_cast<std::size_t>(label)];
    }
    for (std::size_t k = 0; k < class_counts.size(); ++k)
        if (class_counts[k] == 0)
            throw DataError("train_ecs_dbn: class " + std::to_string(k) +
                            " absent from training data");

    EcsDbnModel model;
    model.dbn = pretrain(dbn_cfg, train_x);
    model.dbn = finetune(std::move(model.dbn), train_x, train_y, dbn_cfg);

    const Matrix cached_probs = predict_proba(model.dbn, train_x);
    FitnessFn fitness = [&](const std::vector<double>& genes) {
        return cost_vector_fitness(cached_probs, train_y, genes);
    };

    DeResult de = evolve(de_params, dbn_cfg.n_classes, rng, fitness);
    model.best_costs = CostVector(de.best.genes);
    model.training_fitness = de.best.fitness;
    model.de_trace = de.trace;
    return model;
}

/// Cost-adjusted prediction of the bundled DBN.
inline std::vector<int> predict(const EcsDbnModel& model, const Matrix& x) {
    return predict_with_costs(predict_proba(model.dbn, x), model.best_costs);
}

// Model bundle: evolved costs, achieved fitness and trace, then the DBN.

inline void save_model(const EcsDbnModel& model, std::ostream& os) {
    os << "ecsdbn-model 1\n";
    os << "costs " << model.best_costs.costs.size();
    for (double c : model.best_costs.costs)
        os << ' ' << detail::format_double(c);
    os << '\n';
    os << "fitness " << detail::format_double(model.training_fitness) << '\n';
    os << "trace " << model.de_trace.size();
    for (double v : model.de_trace)
        os << ' ' << detail::format_double(v);
    os << '\n';
    save_dbn(model.dbn, os);
}

inline EcsDbnModel load_model(std::istream& is) {
    std::string magic;
    int version = 0;
    if (!(is >> magic >> version) || magic != "ecsdbn-model" || version != 1)
        throw FormatError("model load: unrecognized header");

    EcsDbnModel model;
    std::string key;
    std::size_t count = 0;
    if (!(is >> key >> count) || key != "costs")
        throw FormatError("model load: expected costs block");
    model.best_costs = CostVector(detail::read_values(is, count, "costs"));

    std::string tok;
    if (!(is >> key >> tok) || key != "fitness")
        throw FormatError("model load: expected fitness");
    bool ok = false;
    model.training_fitness = detail::parse_double(tok, ok);
    if (!ok)
        throw FormatError("model load: bad fitness value");

    if (!(is >> key >> count) || key != "trace")
        throw FormatError("model load: expected trace block");
    model.de_trace = detail::read_values(is, count, "trace");

    model.dbn = load_dbn(is);
    return model;
}

} // namespace ecsdbn

#endif
