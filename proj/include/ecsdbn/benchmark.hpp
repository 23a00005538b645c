#ifndef ECSDBN_BENCHMARK_HPP
#define ECSDBN_BENCHMARK_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ecsdbn/adaptive_de.hpp"
#include "ecsdbn/cost_model.hpp"
#include "ecsdbn/dbn.hpp"
#include "ecsdbn/detail/text.hpp"
#include "ecsdbn/ecs_trainer.hpp"
#include "ecsdbn/errors.hpp"
#include "ecsdbn/keel_data.hpp"
#include "ecsdbn/metrics.hpp"
#include "ecsdbn/stats_tests.hpp"

namespace ecsdbn {

namespace detail {

inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos)
        return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

/// Split one CSV line honoring double-quoted fields.
inline std::vector<std::string> csv_split(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

} // namespace detail

inline const std::vector<std::string>& metric_names() {
    static const std::vector<std::string> names = {"accuracy", "gmean", "precision",
                                                   "recall", "f1", "auc"};
    return names;
}

/// One trained-and-evaluated (dataset, method, trial, fold) cell.
struct RunRecord {
    std::string dataset;
    std::string method;
    std::size_t trial = 0;
    std::size_t fold = 0;
    std::uint64_t seed = 0;
    std::map<std::string, double> metrics;
    double wall_time_s = 0.0;
    std::vector<double> best_costs; // empty for cost-free methods

    bool operator==(const RunRecord& o) const {
        return dataset == o.dataset && method == o.method && trial == o.trial &&
               fold == o.fold && seed == o.seed && metrics == o.metrics &&
               best_costs == o.best_costs;
    }
};

enum class SplitMode { Keel, Cv };
enum class HiddenMode { Fixed, Random };

struct BenchConfig {
    std::vector<CatalogEntry> catalog;
    std::vector<std::string> methods = {"ecs-dbn", "dbn"};
    std::size_t trials = 10;
    std::size_t folds = 5;
    std::uint64_t master_seed = 0;
    SplitMode split = SplitMode::Keel;
    HiddenMode hidden = HiddenMode::Fixed;
    std::size_t jobs = 1;

    std::vector<std::size_t> fixed_layers = {25, 25};
    std::size_t random_n_layers = 2;
    CdConfig pretrain{};
    double finetune_lr = 0.01;
    std::size_t finetune_epochs = 300;
    DeParams de{};

    void validate() const {
        if (catalog.empty())
            throw ParamError("benchmark: empty catalog");
        if (methods.empty())
            throw ParamError("benchmark: no methods selected");
        for (const std::string& m : methods)
            if (m != "dbn" && m != "ecs-dbn")
                throw ParamError("benchmark: unknown method '" + m + "'");
        if (trials < 1)
            throw ParamError("benchmark: trials must be >= 1");
        if (split == SplitMode::Cv && folds < 2)
            throw ParamError("benchmark: folds must be >= 2 in cv mode");
        if (jobs < 1)
            throw ParamError("benchmark: jobs must be >= 1");
    }
};

struct BenchOutcome {
    std::vector<RunRecord> records;
    std::vector<std::string> failures;   // per-dataset load errors
    std::size_t datasets_attempted = 0;
    std::size_t datasets_completed = 0;
};

namespace detail {

struct LoadedDataset {
    std::string name;
    Dataset train;     // KEEL partition mode
    Dataset merged;    // cv mode: train+test rows pooled
    Matrix test_features;
    std::vector<int> test_labels;
    std::size_t n_classes = 0;
    std::size_t positive = 1;
};

/// Remap the test partition's labels onto the train partition's class
/// order so both halves agree on indices.
inline void align_partitions(const Dataset& train, Dataset& test) {
    if (train.features.cols != test.features.cols)
        throw DataError("dataset '" + train.name + "': partitions disagree on feature width");
    if (train.n_classes() != test.n_classes())
        throw DataError("dataset '" + train.name + "': partitions disagree on class count");
    std::vector<int> remap(test.n_classes(), -1);
    for (std::size_t c = 0; c < test.class_names.size(); ++c) {
        auto it = std::find(train.class_names.begin(), train.class_names.end(),
                            test.class_names[c]);
        if (it == train.class_names.end())
            throw DataError("dataset '" + train.name + "': class '" + test.class_names[c] +
                            "' missing from train partition");
        remap[c] = static_cast<int>(it - train.class_names.begin());
    }
    for (int& label : test.labels)
        label = remap[static_cast<std::size_t>(label)];
    test.class_names = train.class_names;
    test.minority_class = train.minority_class;
}

inline LoadedDataset load_entry(const CatalogEntry& entry) {
    LoadedDataset loaded;
    loaded.name = entry.name;
    loaded.train = load_keel_file(entry.train_path);
    Dataset test = load_keel_file(entry.test_path);
    align_partitions(loaded.train, test);

    loaded.n_classes = loaded.train.n_classes();
    loaded.positive = loaded.train.minority_class;
    loaded.test_features = test.features;
    loaded.test_labels = test.labels;

    // Pooled copy for cv re-splitting.
    loaded.merged = loaded.train;
    loaded.merged.features = Matrix(loaded.train.n_samples() + test.n_samples(),
                                    loaded.train.features.cols);
    std::copy(loaded.train.features.values.begin(), loaded.train.features.values.end(),
              loaded.merged.features.values.begin());
    std::copy(test.features.values.begin(), test.features.values.end(),
              loaded.merged.features.values.begin() +
                  static_cast<std::ptrdiff_t>(loaded.train.features.values.size()));
    loaded.merged.labels = loaded.train.labels;
    loaded.merged.labels.insert(loaded.merged.labels.end(), test.labels.begin(),
                                test.labels.end());
    return loaded;
}

struct RunTask {
    std::size_t dataset_idx;
    std::string method;
    std::size_t trial;
    std::size_t fold;
};

} // namespace detail

/// Train one method on a train/test split and score the six benchmark
/// metrics. The positive class for the binary-style metrics is the
/// minority class; AUC scores are the positive-class posteriors.
inline RunRecord evaluate_split(const std::string& dataset_name, const std::string& method,
                                std::size_t trial, std::size_t fold, std::uint64_t run_seed,
                                const Matrix& raw_train_x, const std::vector<int>& train_y,
                                const Matrix& raw_test_x, const std::vector<int>& test_y,
                                std::size_t n_classes, std::size_t positive,
                                const BenchConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();

    MinMaxScaler scaler = fit_minmax(raw_train_x);
    Matrix train_x = transform_minmax(raw_train_x, scaler, false);
    Matrix test_x = transform_minmax(raw_test_x, scaler, true);

    RngStream run_rng(run_seed);
    DbnConfig dbn_cfg;
    dbn_cfg.n_classes = n_classes;
    dbn_cfg.pretrain = cfg.pretrain;
    dbn_cfg.finetune_lr = cfg.finetune_lr;
    dbn_cfg.finetune_epochs = cfg.finetune_epochs;
    dbn_cfg.seed = run_rng.derive(1).next_u64();
    if (cfg.hidden == HiddenMode::Random) {
        RngStream arch_rng = run_rng.derive(2);
        dbn_cfg.layer_sizes = random_layer_sizes(arch_rng, cfg.random_n_layers);
    } else {
        dbn_cfg.layer_sizes = cfg.fixed_layers;
    }

    RunRecord rec;
    rec.dataset = dataset_name;
    rec.method = method;
    rec.trial = trial;
    rec.fold = fold;
    rec.seed = run_seed;

    Matrix test_probs;
    std::vector<int> preds;
    if (method == "ecs-dbn") {
        EcsDbnModel model =
            train_ecs_dbn(train_x, train_y, dbn_cfg, cfg.de, run_rng.derive(3));
        test_probs = predict_proba(model.dbn, test_x);
        preds = predict_with_costs(test_probs, model.best_costs);
        rec.best_costs = model.best_costs.costs;
    } else {
        Dbn dbn = pretrain(dbn_cfg, train_x);
        dbn = finetune(std::move(dbn), train_x, train_y, dbn_cfg);
        test_probs = predict_proba(dbn, test_x);
        preds = argmax_rows(test_probs);
    }

    ConfusionMatrix cm = confusion(test_y, preds, n_classes);
    rec.metrics["accuracy"] = accuracy(cm);
    rec.metrics["gmean"] = [&] {
        // A fold can miss a class entirely when the dataset is tiny.
        try {
            return gmean(cm);
        } catch (const DegenerateInputError&) {
            return 0.0;
        }
    }();
    rec.metrics["precision"] = precision(cm, positive);
    rec.metrics["recall"] = recall(cm, positive);
    rec.metrics["f1"] = f1(cm, positive);
    std::vector<double> scores(test_x.rows);
    for (std::size_t n = 0; n < test_x.rows; ++n)
        scores[n] = test_probs(n, positive);
    rec.metrics["auc"] = [&] {
        try {
            return auc(test_y, scores, static_cast<int>(positive));
        } catch (const DegenerateInputError&) {
            return 0.5;
        }
    }();

    rec.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

/// Run the full (dataset x method x trial x fold) grid. Each cell derives
/// its seed from the master seed and its own coordinates, so results do not
/// depend on execution order or the number of worker threads. Unreadable
/// datasets are skipped and reported in the outcome.
inline BenchOutcome run_benchmark(const BenchConfig& cfg) {
    cfg.validate();

    BenchOutcome outcome;
    outcome.datasets_attempted = cfg.catalog.size();
    std::vector<detail::LoadedDataset> datasets;
    for (const CatalogEntry& entry : cfg.catalog) {
        try {
            datasets.push_back(detail::load_entry(entry));
            ++outcome.datasets_completed;
        } catch (const Error& e) {
            outcome.failures.push_back(entry.name + ": " + e.what());
        }
    }

    const std::size_t folds_per_trial = cfg.split == SplitMode::Cv ? cfg.folds : 1;
    std::vector<detail::RunTask> tasks;
    for (std::size_t d = 0; d < datasets.size(); ++d)
        for (const std::string& method : cfg.methods)
            for (std::size_t trial = 0; trial < cfg.trials; ++trial)
                for (std::size_t fold = 0; fold < folds_per_trial; ++fold)
                    tasks.push_back({d, method, trial, fold});

    // Fold plans per (dataset, trial) are shared across methods so both
    // methods see identical splits.
    std::vector<std::vector<FoldPlan>> plans(datasets.size());
    if (cfg.split == SplitMode::Cv) {
        for (std::size_t d = 0; d < datasets.size(); ++d) {
            plans[d].reserve(cfg.trials);
            for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
                std::uint64_t fold_seed =
                    detail::mix64(cfg.master_seed ^ detail::fnv1a(datasets[d].name) ^
                                  detail::mix64(0x5175ULL + trial));
                plans[d].push_back(
                    stratified_kfold(datasets[d].merged.labels, cfg.folds, fold_seed));
            }
        }
    }

    std::vector<RunRecord> records(tasks.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string first_error;
    std::mutex error_mutex;

    auto worker = [&] {
        while (true) {
            std::size_t t = next.fetch_add(1);
            if (t >= tasks.size() || failed.load())
                break;
            const detail::RunTask& task = tasks[t];
            const detail::LoadedDataset& ds = datasets[task.dataset_idx];
            std::uint64_t run_seed = detail::mix64(
                cfg.master_seed ^ detail::fnv1a(ds.name) ^
                detail::mix64(detail::fnv1a(task.method) + 0x9e3779b97f4a7c15ULL * task.trial +
                              0x100000001b3ULL * task.fold));
            try {
                if (cfg.split == SplitMode::Cv) {
                    const FoldPlan& plan = plans[task.dataset_idx][task.trial];
                    auto [train_x, train_y] = take_rows(ds.merged.features, ds.merged.labels,
                                                        plan.train_indices(task.fold));
                    auto [test_x, test_y] = take_rows(ds.merged.features, ds.merged.labels,
                                                      plan.test_indices(task.fold));
                    records[t] = evaluate_split(ds.name, task.method, task.trial, task.fold,
                                                run_seed, train_x, train_y, test_x, test_y,
                                                ds.n_classes, ds.positive, cfg);
                } else {
                    records[t] = evaluate_split(ds.name, task.method, task.trial, task.fold,
                                                run_seed, ds.train.features, ds.train.labels,
                                                ds.test_features, ds.test_labels,
                                                ds.n_classes, ds.positive, cfg);
                }
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!failed.exchange(true))
                    first_error = std::string(e.what());
            }
        }
    };

    std::size_t n_workers = std::min<std::size_t>(cfg.jobs, std::max<std::size_t>(tasks.size(), 1));
    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (std::size_t w = 0; w < n_workers; ++w)
            pool.emplace_back(worker);
        for (std::thread& th : pool)
            th.join();
    }
    if (failed.load())
        throw Error("benchmark run failed: " + first_error);

    std::sort(records.begin(), records.end(), [](const RunRecord& a, const RunRecord& b) {
        return std::tie(a.dataset, a.method, a.trial, a.fold) <
               std::tie(b.dataset, b.method, b.trial, b.fold);
    });
    outcome.records = std::move(records);
    return outcome;
}

// ---------------------------------------------------------------------------
// Run-record CSV

inline void write_runs_csv(const std::vector<RunRecord>& records, std::ostream& os,
                           bool include_wall_time = true) {
    os << "dataset,method,trial,fold,seed,accuracy,gmean,precision,recall,f1,auc";
    if (include_wall_time)
        os << ",wall_time_s";
    os << ",best_costs\n";
    for (const RunRecord& r : records) {
        os << detail::csv_quote(r.dataset) << ',' << detail::csv_quote(r.method) << ','
           << r.trial << ',' << r.fold << ',' << r.seed;
        for (const std::string& name : metric_names()) {
            auto it = r.metrics.find(name);
            os << ',' << (it == r.metrics.end() ? "" : detail::format_double(it->second));
        }
        if (include_wall_time)
            os << ',' << detail::format_double(r.wall_time_s);
        std::string costs;
        for (std::size_t j = 0; j < r.best_costs.size(); ++j) {
            if (j)
                costs += ',';
            costs += detail::format_double(r.best_costs[j]);
        }
        os << ',' << detail::csv_quote(costs) << '\n';
    }
}

inline std::vector<RunRecord> parse_runs_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line))
        throw FormatError("runs csv: empty file");
    std::vector<std::string> header = detail::csv_split(line);
    std::map<std::string, std::size_t> col;
    for (std::size_t i = 0; i < header.size(); ++i)
        col[header[i]] = i;
    for (const char* required : {"dataset", "method", "trial", "fold", "seed", "best_costs"})
        if (!col.count(required))
            throw FormatError(std::string("runs csv: missing column '") + required + "'");

    std::vector<RunRecord> records;
    while (std::getline(is, line)) {
        if (detail::trim(line).empty())
            continue;
        std::vector<std::string> f = detail::csv_split(line);
        if (f.size() != header.size())
            throw FormatError("runs csv: row has " + std::to_string(f.size()) +
                              " fields, expected " + std::to_string(header.size()));
        RunRecord r;
        r.dataset = f[col["dataset"]];
        r.method = f[col["method"]];
        r.trial = static_cast<std::size_t>(std::stoull(f[col["trial"]]));
        r.fold = static_cast<std::size_t>(std::stoull(f[col["fold"]]));
        r.seed = std::stoull(f[col["seed"]]);
        bool ok = false;
        for (const std::string& name : metric_names()) {
            auto it = col.find(name);
            if (it != col.end() && !f[it->second].empty())
                r.metrics[name] = detail::parse_double(f[it->second], ok);
        }
        if (col.count("wall_time_s") && !f[col["wall_time_s"]].empty())
            r.wall_time_s = detail::parse_double(f[col["wall_time_s"]], ok);
        const std::string& costs = f[col["best_costs"]];
        if (!costs.empty())
            r.best_costs = cost_vector_from_csv_field(costs).costs;
        records.push_back(std::move(r));
    }
    return records;
}

// ---------------------------------------------------------------------------
// Aggregation

struct AggregateRow {
    std::string dataset;
    std::string method;
    std::string metric;
    double mean = 0.0;
    double stddev = 0.0;
    std::size_t n = 0;
};

/// Sample mean and (n-1)-denominator standard deviation per
/// (dataset, method, metric) cell. Order of records does not matter.
inline std::vector<AggregateRow> aggregate(const std::vector<RunRecord>& records) {
    if (records.empty())
        throw ParamError("aggregate: no records");
    std::map<std::tuple<std::string, std::string, std::string>, std::vector<double>> cells;
    for (const RunRecord& r : records)
        for (const auto& [metric, value] : r.metrics)
            cells[{r.dataset, r.method, metric}].push_back(value);

    std::vector<AggregateRow> rows;
    rows.reserve(cells.size());
    for (auto& [key, values] : cells) {
        // Fixed summation order makes the result independent of record order.
        std::sort(values.begin(), values.end());
        AggregateRow row;
        row.dataset = std::get<0>(key);
        row.method = std::get<1>(key);
        row.metric = std::get<2>(key);
        row.n = values.size();
        double sum = 0.0;
        for (double v : values)
            sum += v;
        row.mean = sum / static_cast<double>(values.size());
        if (values.size() > 1) {
            double ss = 0.0;
            for (double v : values)
                ss += (v - row.mean) * (v - row.mean);
            row.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline void write_aggregate_csv(const std::vector<AggregateRow>& rows, std::ostream& os) {
    os << "dataset,method,metric,mean,stddev,n\n";
    for (const AggregateRow& r : rows)
        os << detail::csv_quote(r.dataset) << ',' << detail::csv_quote(r.method) << ','
           << r.metric << ',' << detail::format_double(r.mean) << ','
           << detail::format_double(r.stddev) << ',' << r.n << '\n';
}

// ---------------------------------------------------------------------------
// Method comparison

struct MethodComparison {
    std::string method;
    double avg_rank = 0.0;
    std::size_t wins = 0, losses = 0, draws = 0; // vs control, per dataset
    double wilcoxon_p = 1.0;                     // 1.0 for the control itself
    bool holm_significant = false;
};

struct MetricComparison {
    std::string metric;
    std::vector<MethodComparison> methods; // control first
};

struct CompareReport {
    std::string control;
    std::vector<std::string> datasets; // intersection actually compared
    std::vector<MetricComparison> metrics;
    std::vector<std::string> warnings;
};

/// Pairwise Wilcoxon (per-dataset mean scores) against the control, Holm
/// correction across rivals, and average ranks over all methods.
inline CompareReport compare(const std::vector<RunRecord>& records,
                             const std::string& control) {
    std::set<std::string> method_set;
    for (const RunRecord& r : records)
        method_set.insert(r.method);
    if (method_set.size() < 2)
        throw ParamError("compare: need at least two methods");
    if (!method_set.count(control))
        throw ParamError("compare: control method '" + control + "' not in records");

    std::vector<std::string> methods(method_set.begin(), method_set.end());
    std::stable_partition(methods.begin(), methods.end(),
                          [&](const std::string& m) { return m == control; });

    // Per-method dataset coverage; comparisons run on the intersection.
    std::map<std::string, std::set<std::string>> coverage;
    std::set<std::string> all_datasets;
    for (const RunRecord& r : records) {
        coverage[r.method].insert(r.dataset);
        all_datasets.insert(r.dataset);
    }
    std::vector<std::string> datasets;
    for (const std::string& d : all_datasets) {
        bool everywhere = true;
        for (const std::string& m : methods)
            everywhere = everywhere && coverage[m].count(d) > 0;
        if (everywhere)
            datasets.push_back(d);
    }

    CompareReport report;
    report.control = control;
    report.datasets = datasets;
    if (datasets.size() < all_datasets.size())
        report.warnings.push_back("restricted to " + std::to_string(datasets.size()) +
                                  " of " + std::to_string(all_datasets.size()) +
                                  " datasets covered by every method");
    if (datasets.empty())
        throw ParamError("compare: no dataset is covered by every method");

    // Mean score per (metric, method, dataset).
    std::vector<AggregateRow> agg = aggregate(records);
    std::map<std::tuple<std::string, std::string, std::string>, double> mean_of;
    for (const AggregateRow& row : agg)
        mean_of[{row.metric, row.method, row.dataset}] = row.mean;

    for (const std::string& metric : metric_names()) {
        MetricComparison mc;
        mc.metric = metric;

        Matrix scores(methods.size(), datasets.size());
        for (std::size_t m = 0; m < methods.size(); ++m)
            for (std::size_t d = 0; d < datasets.size(); ++d) {
                auto it = mean_of.find({metric, methods[m], datasets[d]});
                if (it == mean_of.end())
                    throw DataError("compare: missing metric '" + metric + "' for " +
                                    methods[m] + " on " + datasets[d]);
                scores(m, d) = it->second;
            }
        std::vector<double> ranks = average_rank(scores, /*higher_is_better=*/true);

        std::vector<double> rival_p;
        for (std::size_t m = 0; m < methods.size(); ++m) {
            MethodComparison entry;
            entry.method = methods[m];
            entry.avg_rank = ranks[m];
            if (methods[m] != control) {
                for (std::size_t d = 0; d < datasets.size(); ++d) {
                    double diff = scores(0, d) - scores(m, d);
                    if (diff > 0)
                        ++entry.wins;
                    else if (diff < 0)
                        ++entry.losses;
                    else
                        ++entry.draws;
                }
                std::vector<double> a(datasets.size()), b(datasets.size());
                for (std::size_t d = 0; d < datasets.size(); ++d) {
                    a[d] = scores(0, d);
                    b[d] = scores(m, d);
                }
                try {
                    entry.wilcoxon_p = wilcoxon_signed_rank(PairedSample(a, b)).p_value;
                } catch (const DegenerateInputError&) {
                    entry.wilcoxon_p = 1.0; // identical scores everywhere
                }
                rival_p.push_back(entry.wilcoxon_p);
            }
            mc.methods.push_back(std::move(entry));
        }

        std::vector<bool> holm = holm_posthoc(rival_p);
        std::size_t rv = 0;
        for (MethodComparison& entry : mc.methods)
            if (entry.method != control)
                entry.holm_significant = holm[rv++];
        report.metrics.push_back(std::move(mc));
    }
    return report;
}

inline void write_compare_csv(const CompareReport& report, std::ostream& os) {
    os << "metric,method,avg_rank,wins,losses,draws,wilcoxon_p,holm_significant\n";
    for (const MetricComparison& mc : report.metrics)
        for (const MethodComparison& m : mc.methods) {
            os << mc.metric << ',' << detail::csv_quote(m.method) << ','
               << detail::format_double(m.avg_rank) << ',';
            if (m.method == report.control)
                os << ",,,,";
            else
                os << m.wins << ',' << m.losses << ',' << m.draws << ','
                   << detail::format_double(m.wilcoxon_p) << ','
                   << (m.holm_significant ? "yes" : "no");
            os << '\n';
        }
}

inline void write_compare_text(const CompareReport& report, std::ostream& os) {
    os << "Comparison against control method '" << report.control << "' over "
       << report.datasets.size() << " dataset(s)\n";
    for (const std::string& w : report.warnings)
        os << "warning: " << w << '\n';
    for (const MetricComparison& mc : report.metrics) {
        os << "\n[" << mc.metric << "]\n";
        for (const MethodComparison& m : mc.methods) {
            os << "  " << m.method << ": avg rank " << m.avg_rank;
            if (m.method != report.control) {
                os << ", W-L-D " << m.wins << '-' << m.losses << '-' << m.draws
                   << ", Wilcoxon p=" << m.wilcoxon_p
                   << (m.holm_significant ? " (significant, Holm)" : " (n.s., Holm)");
            }
            os << '\n';
        }
    }
}

} // namespace ecsdbn

#endif
