#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <sstream>
#include <string>

#include "ecsdbn/benchmark.hpp"

using namespace ecsdbn;

namespace {

std::string data_path(const std::string& file) {
    return std::string(ECSDBN_TEST_DATA_DIR) + "/" + file;
}

/// Small fast grid over the iris0 fixture.
BenchConfig tiny_config() {
    BenchConfig cfg;
    cfg.catalog = {{"iris0", data_path("iris0-tra.dat"), data_path("iris0-tst.dat")}};
    cfg.methods = {"ecs-dbn", "dbn"};
    cfg.trials = 1;
    cfg.folds = 5;
    cfg.split = SplitMode::Cv;
    cfg.master_seed = 11;
    cfg.fixed_layers = {6, 6};
    cfg.pretrain.epochs = 4;
    cfg.finetune_epochs = 12;
    cfg.de.population_size = 6;
    cfg.de.max_generations = 6;
    return cfg;
}

RunRecord make_record(const std::string& dataset, const std::string& method,
                      std::size_t trial, double gm) {
    RunRecord r;
    r.dataset = dataset;
    r.method = method;
    r.trial = trial;
    r.seed = 1;
    for (const std::string& name : metric_names())
        r.metrics[name] = gm;
    return r;
}

} // namespace

TEST_CASE("run grid size is methods x trials x folds") {
    BenchConfig cfg = tiny_config();
    BenchOutcome out = run_benchmark(cfg);
    REQUIRE(out.records.size() == 2 * 1 * 5);
    REQUIRE(out.failures.empty());
    for (const RunRecord& r : out.records) {
        REQUIRE(r.metrics.count("accuracy") == 1);
        REQUIRE(r.metrics.count("gmean") == 1);
        if (r.method == "ecs-dbn")
            REQUIRE(r.best_costs.size() == 2);
        else
            REQUIRE(r.best_costs.empty());
    }
}

TEST_CASE("identical master seeds reproduce identical metrics") {
    BenchConfig cfg = tiny_config();
    BenchOutcome a = run_benchmark(cfg);
    BenchOutcome b = run_benchmark(cfg);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i)
        REQUIRE(a.records[i] == b.records[i]);
}

TEST_CASE("parallel execution does not change the results") {
    BenchConfig cfg = tiny_config();
    BenchOutcome serial = run_benchmark(cfg);
    cfg.jobs = 4;
    BenchOutcome parallel = run_benchmark(cfg);
    REQUIRE(serial.records.size() == parallel.records.size());
    for (std::size_t i = 0; i < serial.records.size(); ++i)
        REQUIRE(serial.records[i] == parallel.records[i]);
}

TEST_CASE("a broken catalog path skips that dataset but not the rest") {
    BenchConfig cfg = tiny_config();
    cfg.catalog.push_back({"ghost", "/nonexistent/ghost-tra.dat", "/nonexistent/ghost-tst.dat"});
    BenchOutcome out = run_benchmark(cfg);
    REQUIRE(out.failures.size() == 1);
    REQUIRE(out.failures[0].find("ghost") != std::string::npos);
    REQUIRE(out.datasets_completed == 1);
    REQUIRE(out.records.size() == 10);
}

TEST_CASE("keel split mode evaluates the fixed partition once per trial") {
    BenchConfig cfg = tiny_config();
    cfg.split = SplitMode::Keel;
    cfg.trials = 2;
    BenchOutcome out = run_benchmark(cfg);
    REQUIRE(out.records.size() == 2 * 2); // methods x trials
    for (const RunRecord& r : out.records)
        REQUIRE(r.fold == 0);
}

TEST_CASE("runs csv round-trips the record collection") {
    BenchConfig cfg = tiny_config();
    BenchOutcome out = run_benchmark(cfg);

    std::ostringstream os;
    write_runs_csv(out.records, os);
    std::istringstream is(os.str());
    std::vector<RunRecord> back = parse_runs_csv(is);
    REQUIRE(back.size() == out.records.size());
    for (std::size_t i = 0; i < back.size(); ++i)
        REQUIRE(back[i] == out.records[i]);
}

TEST_CASE("aggregate mean and stddev") {
    std::vector<RunRecord> records = {make_record("d", "m", 0, 0.4),
                                      make_record("d", "m", 1, 0.6)};
    std::vector<AggregateRow> rows = aggregate(records);
    for (const AggregateRow& row : rows) {
        REQUIRE(row.n == 2);
        REQUIRE(row.mean == Catch::Approx(0.5).epsilon(1e-12));
        REQUIRE(row.stddev == Catch::Approx(0.1414213562).margin(1e-9));
    }

    std::vector<AggregateRow> single = aggregate({make_record("d", "m", 0, 0.7)});
    REQUIRE(single.front().stddev == 0.0);
    REQUIRE_THROWS_AS(aggregate({}), ParamError);
}

TEST_CASE("aggregation is order-invariant") {
    std::vector<RunRecord> fwd, rev;
    for (std::size_t t = 0; t < 5; ++t)
        fwd.push_back(make_record("d", "m", t, 0.1 * static_cast<double>(t)));
    rev.assign(fwd.rbegin(), fwd.rend());
    std::vector<AggregateRow> a = aggregate(fwd);
    std::vector<AggregateRow> b = aggregate(rev);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        REQUIRE(a[i].mean == b[i].mean);
        REQUIRE(a[i].stddev == b[i].stddev);
    }
}

TEST_CASE("compare: control dominating everywhere") {
    std::vector<RunRecord> records;
    const char* datasets[] = {"d1", "d2", "d3", "d4", "d5", "d6"};
    for (const char* d : datasets) {
        RunRecord winner = make_record(d, "ctrl", 0, 0.9);
        RunRecord loser = make_record(d, "rival", 0, 0.5);
        records.push_back(winner);
        records.push_back(loser);
    }
    CompareReport report = compare(records, "ctrl");
    REQUIRE(report.datasets.size() == 6);
    for (const MetricComparison& mc : report.metrics) {
        REQUIRE(mc.methods[0].method == "ctrl");
        REQUIRE(mc.methods[0].avg_rank == 1.0);
        const MethodComparison& rival = mc.methods[1];
        REQUIRE(rival.wins == 6);
        REQUIRE(rival.losses == 0);
        REQUIRE(rival.draws == 0);
        REQUIRE(rival.avg_rank == 2.0);
        // n=6 one-sided dominance: exact two-sided p = 2/64
        REQUIRE(rival.wilcoxon_p == Catch::Approx(0.03125).epsilon(1e-12));
        REQUIRE(rival.holm_significant);
    }
}

TEST_CASE("compare: identical methods draw everywhere with tied ranks") {
    std::vector<RunRecord> records;
    for (const char* d : {"d1", "d2", "d3"}) {
        records.push_back(make_record(d, "a", 0, 0.7));
        records.push_back(make_record(d, "b", 0, 0.7));
    }
    CompareReport report = compare(records, "a");
    for (const MetricComparison& mc : report.metrics) {
        REQUIRE(mc.methods[0].avg_rank == 1.5);
        REQUIRE(mc.methods[1].avg_rank == 1.5);
        REQUIRE(mc.methods[1].draws == 3);
        REQUIRE(mc.methods[1].wilcoxon_p == 1.0);
        REQUIRE_FALSE(mc.methods[1].holm_significant);
    }
}

TEST_CASE("compare: three methods against a hand-ranked oracle") {
    // scores per dataset: a > b > c on d1/d2, b > a > c on d3
    std::map<std::string, std::vector<double>> scores = {
        {"a", {0.9, 0.8, 0.6}}, {"b", {0.7, 0.7, 0.7}}, {"c", {0.1, 0.2, 0.3}}};
    std::vector<RunRecord> records;
    const char* datasets[] = {"d1", "d2", "d3"};
    for (const auto& [method, vals] : scores)
        for (std::size_t d = 0; d < 3; ++d)
            records.push_back(make_record(datasets[d], method, 0, vals[d]));

    CompareReport report = compare(records, "a");
    const MetricComparison& mc = report.metrics.front();
    std::map<std::string, double> ranks;
    for (const MethodComparison& m : mc.methods)
        ranks[m.method] = m.avg_rank;
    REQUIRE(ranks["a"] == Catch::Approx((1.0 + 1.0 + 2.0) / 3.0));
    REQUIRE(ranks["b"] == Catch::Approx((2.0 + 2.0 + 1.0) / 3.0));
    REQUIRE(ranks["c"] == Catch::Approx(3.0));
}

TEST_CASE("compare restricts to the dataset intersection with a warning") {
    std::vector<RunRecord> records;
    records.push_back(make_record("d1", "a", 0, 0.9));
    records.push_back(make_record("d1", "b", 0, 0.5));
    records.push_back(make_record("d2", "a", 0, 0.9)); // b missing on d2
    CompareReport report = compare(records, "a");
    REQUIRE(report.datasets == std::vector<std::string>{"d1"});
    REQUIRE(report.warnings.size() == 1);

    REQUIRE_THROWS_AS(compare({make_record("d", "a", 0, 0.5)}, "a"), ParamError);
    REQUIRE_THROWS_AS(compare(records, "zzz"), ParamError);
}

TEST_CASE("compare output writers produce parsable text") {
    std::vector<RunRecord> records;
    for (const char* d : {"d1", "d2"}) {
        records.push_back(make_record(d, "a", 0, 0.9));
        records.push_back(make_record(d, "b", 0, 0.5));
    }
    CompareReport report = compare(records, "a");
    std::ostringstream csv, text;
    write_compare_csv(report, csv);
    write_compare_text(report, text);
    REQUIRE(csv.str().find("metric,method,avg_rank") == 0);
    REQUIRE(text.str().find("control method 'a'") != std::string::npos);
}

TEST_CASE("config validation catches bad setups") {
    BenchConfig cfg = tiny_config();
    cfg.methods = {"svm"};
    REQUIRE_THROWS_AS(run_benchmark(cfg), ParamError);

    BenchConfig empty;
    empty.catalog.clear();
    REQUIRE_THROWS_AS(run_benchmark(empty), ParamError);
}
