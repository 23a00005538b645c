#ifndef ECSDBN_ADAPTIVE_DE_HPP
#define ECSDBN_ADAPTIVE_DE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "ecsdbn/detail/text.hpp"
#include "ecsdbn/errors.hpp"
#include "ecsdbn/rng.hpp"

namespace ecsdbn {

/// Control parameters of the adaptive differential evolution search.
struct DeParams {
    std::size_t population_size = 30;
    std::size_t max_generations = 100;
    double mu_cr = 0.5;            // initial crossover-probability mean
    double mu_f = 0.5;             // initial mutation-factor location
    double beta = 0.5;             // adaptation rate
    double lower_bound = 0.0;      // box bounds, applied to every gene
    double upper_bound = 1.0;
    std::size_t stagnation_window = 30;

    void validate() const {
        if (population_size < 4)
            throw ParamError("DeParams: population_size must be >= 4");
        if (!(beta > 0.0 && beta < 1.0))
            throw ParamError("DeParams: beta must be in (0,1)");
        if (!(lower_bound < upper_bound))
            throw ParamError("DeParams: lower_bound must be < upper_bound");
        if (stagnation_window < 1)
            throw ParamError("DeParams: stagnation_window must be >= 1");
    }
};

/// One candidate solution and its fitness (maximization).
struct Individual {
    std::vector<double> genes;
    double fitness = std::numeric_limits<double>::quiet_NaN();
    bool evaluated = false;
};

using FitnessFn = std::function<double(const std::vector<double>&)>;

/// Mutable search state: population, archive of replaced parents, adaptive
/// parameter means, and per-generation bookkeeping.
struct DeState {
    std::vector<Individual> population;
    std::vector<Individual> archive;
    double mu_cr = 0.5;
    double mu_f = 0.5;
    std::size_t generation = 0;
    Individual best_ever;
    std::vector<double> best_history; // best-so-far after init and each generation
    std::vector<double> success_cr;   // successful Cr_i of the current generation
    std::vector<double> success_f;    // successful F_i of the current generation
};

/// Uniform population in the bounded box, every individual evaluated.
inline DeState initialize(const DeParams& params, std::size_t dims, RngStream rng,
                          const FitnessFn& fitness) {
    params.validate();
    if (dims == 0)
        throw ParamError("initialize: dimension must be >= 1");

    DeState state;
    state.mu_cr = params.mu_cr;
    state.mu_f = params.mu_f;
    state.population.resize(params.population_size);
    for (std::size_t i = 0; i < params.population_size; ++i) {
        RngStream ind_rng = rng.derive(i);
        Individual& ind = state.population[i];
        ind.genes.resize(dims);
        for (double& g : ind.genes)
            g = params.lower_bound +
                ind_rng.next_double() * (params.upper_bound - params.lower_bound);
        ind.fitness = fitness(ind.genes);
        ind.evaluated = true;
        if (i == 0 || ind.fitness > state.best_ever.fitness)
            state.best_ever = ind;
    }
    state.best_history.push_back(state.best_ever.fitness);
    return state;
}

/// Per-individual control parameters: Cr ~ N(mu_cr, 0.1) clipped to [0,1],
/// F ~ Cauchy(mu_f, 0.1) redrawn while non-positive and truncated to 1.
inline std::pair<double, double> sample_control_params(const DeState& state, RngStream& rng) {
    double cr = sample_normal(rng, state.mu_cr, 0.1);
    cr = std::clamp(cr, 0.0, 1.0);
    double f = sample_cauchy(rng, state.mu_f, 0.1);
    while (f <= 0.0)
        f = sample_cauchy(rng, state.mu_f, 0.1);
    f = std::min(f, 1.0);
    return {cr, f};
}

/// Donor vector c_i + F * (c_j - c_k) with j, k drawn distinct from each
/// other and from i; genes clipped into the box.
inline std::vector<double> mutate(const DeState& state, std::size_t i, double f,
                                  const DeParams& params, RngStream& rng) {
    const std::size_t n = state.population.size();
    if (n < 3)
        throw StateError("mutate: population must hold at least 3 individuals");
    std::size_t j = i;
    while (j == i)
        j = static_cast<std::size_t>(rng.next_below(n));
    std::size_t k = i;
    while (k == i || k == j)
        k = static_cast<std::size_t>(rng.next_below(n));

    const std::vector<double>& ci = state.population[i].genes;
    const std::vector<double>& cj = state.population[j].genes;
    const std::vector<double>& ck = state.population[k].genes;
    std::vector<double> donor(ci.size());
    for (std::size_t d = 0; d < donor.size(); ++d)
        donor[d] = std::clamp(ci[d] + f * (cj[d] - ck[d]),
                              params.lower_bound, params.upper_bound);
    return donor;
}

/// Binomial crossover: gene d comes from the donor iff d == i_rand or
/// rand < cr, so at least one donor gene always survives.
inline std::vector<double> crossover(const std::vector<double>& target,
                                     const std::vector<double>& donor, double cr,
                                     RngStream& rng) {
    if (target.size() != donor.size())
        throw ShapeError("crossover: target and donor lengths differ");
    const std::size_t dims = target.size();
    std::size_t i_rand = static_cast<std::size_t>(rng.next_below(dims));
    std::vector<double> trial(dims);
    for (std::size_t d = 0; d < dims; ++d)
        trial[d] = (d == i_rand || rng.next_double() < cr) ? donor[d] : target[d];
    return trial;
}

/// One-to-one selection for slot i. The trial wins only on strict fitness
/// improvement; the replaced parent goes to the archive and (cr, f) are
/// recorded as successful. The archive is capped at the population size by
/// random eviction.
inline void select(DeState& state, std::size_t i, const Individual& trial, double cr,
                   double f, RngStream& rng) {
    if (!trial.evaluated)
        throw StateError("select: trial individual has not been evaluated");
    Individual& parent = state.population[i];
    if (trial.fitness > parent.fitness) {
        state.archive.push_back(parent);
        state.success_cr.push_back(cr);
        state.success_f.push_back(f);
        parent = trial;
        if (trial.fitness > state.best_ever.fitness)
            state.best_ever = trial;
        while (state.archive.size() > state.population.size()) {
            std::size_t victim = static_cast<std::size_t>(rng.next_below(state.archive.size()));
            state.archive.erase(state.archive.begin() + static_cast<std::ptrdiff_t>(victim));
        }
    }
}

/// End-of-generation parameter adaptation:
///   mu_cr <- (1-beta) mu_cr + beta mean(S_CR), likewise mu_f.
/// An empty success set leaves the corresponding mean untouched.
inline void adapt_parameters(DeState& state, std::span<const double> s_cr,
                             std::span<const double> s_f, double beta) {
    if (!s_cr.empty()) {
        double mean_cr = 0.0;
        for (double v : s_cr)
            mean_cr += v;
        mean_cr /= static_cast<double>(s_cr.size());
        state.mu_cr = (1.0 - beta) * state.mu_cr + beta * mean_cr;
    }
    if (!s_f.empty()) {
        double mean_f = 0.0;
        for (double v : s_f)
            mean_f += v;
        mean_f /= static_cast<double>(s_f.size());
        state.mu_f = (1.0 - beta) * state.mu_f + beta * mean_f;
    }
}

struct DeResult {
    Individual best;
    std::vector<double> trace;        // best-so-far fitness, trace[0] after init
    std::vector<double> mu_cr_trace;  // per generation, aligned with trace[1..]
    std::vector<double> mu_f_trace;
    std::size_t generations = 0;      // evolution generations actually run
};

/// Full synchronous-generational run: trial vectors for the whole
/// generation are built against the parent population before any selection
/// is applied. Stops at max_generations or once the best fitness has stayed
/// exactly unchanged for more than stagnation_window generations. Streams
/// are derived per (generation, individual), so evaluation order cannot
/// change the outcome.
inline DeResult evolve(const DeParams& params, std::size_t dims, RngStream rng,
                       const FitnessFn& fitness) {
    DeState state = initialize(params, dims, rng.derive(0), fitness);

    std::vector<double> mu_cr_trace, mu_f_trace;
    std::size_t since_improvement = 0;
    for (std::size_t g = 1; g <= params.max_generations; ++g) {
        RngStream gen_rng = rng.derive(g);
        state.generation = g;
        state.success_cr.clear();
        state.success_f.clear();

        const std::size_t n = state.population.size();
        std::vector<Individual> trials(n);
        std::vector<double> crs(n), fs(n);
        for (std::size_t i = 0; i < n; ++i) {
            RngStream ind_rng = gen_rng.derive(i);
            auto [cr, f] = sample_control_params(state, ind_rng);
            crs[i] = cr;
            fs[i] = f;
            std::vector<double> donor = mutate(state, i, f, params, ind_rng);
            trials[i].genes = crossover(state.population[i].genes, donor, cr, ind_rng);
        }
        for (std::size_t i = 0; i < n; ++i) {
            trials[i].fitness = fitness(trials[i].genes);
            trials[i].evaluated = true;
        }

        double best_before = state.best_ever.fitness;
        RngStream archive_rng = gen_rng.derive(n);
        for (std::size_t i = 0; i < n; ++i)
            select(state, i, trials[i], crs[i], fs[i], archive_rng);
        adapt_parameters(state, state.success_cr, state.success_f, params.beta);

        state.best_history.push_back(state.best_ever.fitness);
        mu_cr_trace.push_back(state.mu_cr);
        mu_f_trace.push_back(state.mu_f);
        since_improvement = state.best_ever.fitness > best_before ? 0 : since_improvement + 1;

        if (since_improvement > params.stagnation_window)
            break;
    }

    DeResult result;
    result.best = state.best_ever;
    result.trace = state.best_history;
    result.mu_cr_trace = std::move(mu_cr_trace);
    result.mu_f_trace = std::move(mu_f_trace);
    result.generations = state.generation;
    return result;
}

/// Per-generation trace rows (generation, best fitness, mu_cr, mu_f) as CSV.
/// Generation 0 is the state right after initialization.
inline void write_de_trace_csv(const DeResult& result, std::ostream& os,
                               double initial_mu_cr = 0.5, double initial_mu_f = 0.5) {
    os << "generation,best_fitness,mu_cr,mu_f\n";
    for (std::size_t g = 0; g < result.trace.size(); ++g) {
        os << g << ',' << detail::format_double(result.trace[g]) << ',';
        if (g == 0)
            os << detail::format_double(initial_mu_cr) << ','
               << detail::format_double(initial_mu_f);
        else
            os << detail::format_double(result.mu_cr_trace[g - 1]) << ','
               << detail::format_double(result.mu_f_trace[g - 1]);
        os << '\n';
    }
}

} // namespace ecsdbn

#endif
