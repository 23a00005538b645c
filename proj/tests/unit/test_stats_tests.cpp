#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "ecsdbn/rng.hpp"
#include "ecsdbn/stats_tests.hpp"

using namespace ecsdbn;

namespace {

// Independent exhaustive enumeration over all sign assignments, working in
// plain doubles. Used as the oracle for the exact branch.
double oracle_wilcoxon_p(const std::vector<double>& diffs) {
    std::vector<double> mags;
    for (double d : diffs)
        if (d != 0.0)
            mags.push_back(std::fabs(d));
    const std::size_t n = mags.size();

    // midranks
    std::vector<double> sorted(mags);
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> ranks(n);
    for (std::size_t i = 0; i < n; ++i) {
        double lo = 0, hi = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (sorted[j] < mags[i])
                ++lo;
            if (sorted[j] <= mags[i])
                ++hi;
        }
        ranks[i] = 0.5 * (lo + 1 + hi);
    }

    double w_plus = 0.0;
    std::size_t idx = 0;
    for (double d : diffs) {
        if (d == 0.0)
            continue;
        if (d > 0.0)
            w_plus += ranks[idx];
        ++idx;
    }
    double total = 0.0;
    for (double r : ranks)
        total += r;
    double w = std::min(w_plus, total - w_plus);

    std::size_t hits = 0;
    for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::size_t(1) << i))
                s += ranks[i];
        if (s <= w + 1e-9 || s >= total - w - 1e-9)
            ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(std::size_t(1) << n);
}

} // namespace

TEST_CASE("wilcoxon rejects all-zero differences") {
    PairedSample s({1.0, 2.0, 3.0}, {1.0, 2.0, 3.0});
    REQUIRE_THROWS_AS(wilcoxon_signed_rank(s), DegenerateInputError);
}

TEST_CASE("wilcoxon n=6 all-positive differences") {
    PairedSample s({2, 3, 4, 5, 6, 7}, {1, 1, 1, 1, 1, 1});
    TestResult r = wilcoxon_signed_rank(s);
    REQUIRE(r.statistic == 0.0);
    REQUIRE(r.p_value == Catch::Approx(2.0 / 64.0).epsilon(1e-12));
    REQUIRE(r.significant);
}

TEST_CASE("wilcoxon exact p matches brute-force enumeration") {
    RngStream rng(404);
    for (int rep = 0; rep < 50; ++rep) {
        std::size_t n = 4 + rng.next_below(7); // up to 10 diffs
        std::vector<double> a(n), b(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = static_cast<double>(rng.next_below(12)) / 4.0;
            b[i] = static_cast<double>(rng.next_below(12)) / 4.0;
        }
        std::vector<double> diffs(n);
        bool any = false;
        for (std::size_t i = 0; i < n; ++i) {
            diffs[i] = a[i] - b[i];
            any = any || diffs[i] != 0.0;
        }
        if (!any)
            continue;
        TestResult r = wilcoxon_signed_rank(PairedSample(a, b));
        REQUIRE(std::fabs(r.p_value - oracle_wilcoxon_p(diffs)) < 1e-12);
    }
}

TEST_CASE("wilcoxon p is invariant under positive scaling of differences") {
    PairedSample s({0.9, 0.4, 0.7, 0.2, 0.65}, {0.5, 0.5, 0.5, 0.5, 0.5});
    std::vector<double> scaled_a(s.a.size());
    for (std::size_t i = 0; i < s.a.size(); ++i)
        scaled_a[i] = s.b[i] + 3.5 * (s.a[i] - s.b[i]);
    TestResult r1 = wilcoxon_signed_rank(s);
    TestResult r2 = wilcoxon_signed_rank(PairedSample(scaled_a, s.b));
    REQUIRE(r1.p_value == r2.p_value);
    REQUIRE(r1.statistic == r2.statistic);
}

TEST_CASE("wilcoxon normal approximation is sane for large n") {
    // 20 positive differences of mixed magnitude: strongly significant.
    std::vector<double> a(20), b(20, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] = 0.1 + 0.05 * static_cast<double>(i % 7);
    TestResult r = wilcoxon_signed_rank(PairedSample(a, b));
    REQUIRE(r.p_value < 0.001);
    REQUIRE(r.p_value > 0.0);

    // Balanced +/- differences of equal magnitude: far from significant.
    std::vector<double> c(20), d(20, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = (i % 2 == 0) ? 1.0 : -1.0;
    TestResult r2 = wilcoxon_signed_rank(PairedSample(c, d));
    REQUIRE(r2.p_value > 0.5);
}

TEST_CASE("holm single comparison reduces to the plain alpha test") {
    REQUIRE(holm_posthoc({0.04}, 0.05) == std::vector<bool>{true});
    REQUIRE(holm_posthoc({0.06}, 0.05) == std::vector<bool>{false});
}

TEST_CASE("holm worked example rejects only the smallest p") {
    std::vector<bool> rejected = holm_posthoc({0.01, 0.04, 0.03}, 0.05);
    REQUIRE(rejected == std::vector<bool>{true, false, false});
}

TEST_CASE("holm rejects nothing when all p equal 1") {
    REQUIRE(holm_posthoc({1.0, 1.0, 1.0}) == std::vector<bool>{false, false, false});
}

TEST_CASE("holm rejections are a subset of unadjusted rejections") {
    RngStream rng(17);
    for (int rep = 0; rep < 100; ++rep) {
        std::vector<double> p(1 + rng.next_below(8));
        for (double& v : p)
            v = rng.next_double();
        std::vector<bool> holm = holm_posthoc(p, 0.05);
        for (std::size_t i = 0; i < p.size(); ++i)
            if (holm[i])
                REQUIRE(p[i] <= 0.05);
    }
}

TEST_CASE("average rank basics") {
    Matrix one(1, 4, 0.5);
    REQUIRE(average_rank(one, true) == std::vector<double>{1.0});

    // Method 0 better everywhere (higher is better).
    Matrix two(2, 3);
    two.values = {0.9, 0.8, 0.7, 0.5, 0.4, 0.3};
    std::vector<double> ranks = average_rank(two, true);
    REQUIRE(ranks[0] == 1.0);
    REQUIRE(ranks[1] == 2.0);

    REQUIRE_THROWS_AS(average_rank(Matrix(), true), ParamError);
}

TEST_CASE("average rank matches a per-column sort oracle") {
    RngStream rng(55);
    const std::size_t m = 7, d = 3;
    Matrix scores(m, d);
    for (double& v : scores.values)
        v = rng.next_double();
    std::vector<double> got = average_rank(scores, true);

    std::vector<double> expected(m, 0.0);
    for (std::size_t col = 0; col < d; ++col) {
        for (std::size_t i = 0; i < m; ++i) {
            double rank = 1.0;
            for (std::size_t j = 0; j < m; ++j)
                if (scores(j, col) > scores(i, col))
                    rank += 1.0;
            expected[i] += rank; // no ties with continuous draws
        }
    }
    for (std::size_t i = 0; i < m; ++i)
        REQUIRE(got[i] == Catch::Approx(expected[i] / d).epsilon(1e-12));
}

TEST_CASE("per-dataset ranks always sum to M(M+1)/2") {
    RngStream rng(56);
    for (int rep = 0; rep < 50; ++rep) {
        std::size_t m = 2 + rng.next_below(6);
        Matrix scores(m, 1);
        for (double& v : scores.values)
            v = static_cast<double>(rng.next_below(4)); // frequent ties
        std::vector<double> ranks = average_rank(scores, false);
        double sum = 0.0;
        for (double r : ranks)
            sum += r;
        REQUIRE(sum == Catch::Approx(0.5 * m * (m + 1)).epsilon(1e-12));
    }
}
