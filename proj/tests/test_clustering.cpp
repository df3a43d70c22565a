#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "ep/clustering.hpp"
#include "ep/errors.hpp"
#include "ep/synth.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace ep;

TEST_CASE("k equal to the sample count puts every point in its own cluster") {
    const auto m = testutil::random_matrix(8, 3, 1);
    const ClusteringResult res = kmeans(m, 8, 50, 3, 42);
    CHECK(res.inertia == doctest::Approx(0.0).epsilon(1e-12));
    const std::set<std::size_t> unique(res.assignments.begin(), res.assignments.end());
    CHECK(unique.size() == 8);
}

TEST_CASE("k=1 converges to the mean with inertia equal to total scatter") {
    const auto m = testutil::random_matrix(30, 2, 2);
    const ClusteringResult res = kmeans(m, 1, 50, 1, 7);

    std::vector<double> mean(2, 0.0);
    for (std::size_t i = 0; i < 30; ++i)
        for (std::size_t j = 0; j < 2; ++j) mean[j] += m.row(i)[j];
    for (double& v : mean) v /= 30.0;
    double scatter = 0.0;
    for (std::size_t i = 0; i < 30; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            scatter += (m.row(i)[j] - mean[j]) * (m.row(i)[j] - mean[j]);

    CHECK(res.centroids[0] == doctest::Approx(mean[0]).epsilon(1e-12));
    CHECK(res.centroids[1] == doctest::Approx(mean[1]).epsilon(1e-12));
    CHECK(res.inertia == doctest::Approx(scatter).epsilon(1e-9));
}

TEST_CASE("tight well-separated blobs are recovered perfectly") {
    const Dataset d = make_blobs(BlobSpec{.n_classes = 3,
                                          .samples_per_class = 20,
                                          .n_dims = 4,
                                          .center_spread = 50.0,
                                          .within_std = 0.3,
                                          .seed = 3});
    const ClusteringResult res = kmeans(d.features, 3, 100, 10, 11);
    CHECK(purity(res.assignments, *d.labels) == 1.0);
}

TEST_CASE("inertia trace is non-increasing") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto m = testutil::random_matrix(60, 4, seed + 100);
        const ClusteringResult res = kmeans(m, 5, 100, 1, seed);
        REQUIRE_FALSE(res.inertia_trace.empty());
        for (std::size_t i = 1; i < res.inertia_trace.size(); ++i)
            CHECK(res.inertia_trace[i] <= res.inertia_trace[i - 1] + 1e-9);
        CHECK(res.inertia == res.inertia_trace.back());
    }
}

TEST_CASE("kmeans is deterministic given seed and restarts") {
    const auto m = testutil::random_matrix(50, 3, 200);
    const ClusteringResult a = kmeans(m, 4, 100, 5, 21);
    const ClusteringResult b = kmeans(m, 4, 100, 5, 21);
    CHECK(a.assignments == b.assignments);
    CHECK(a.inertia == b.inertia);

    const ClusteringResult threaded = kmeans(m, 4, 100, 5, 21, 4);
    CHECK(a.assignments == threaded.assignments);
    CHECK(a.inertia == threaded.inertia);
}

TEST_CASE("restarts never hurt the objective") {
    const auto m = testutil::random_matrix(60, 3, 201);
    const double single = kmeans(m, 6, 100, 1, 33).inertia;
    const double multi = kmeans(m, 6, 100, 12, 33).inertia;
    CHECK(multi <= single + 1e-9);
}

TEST_CASE("invalid k is rejected") {
    const auto m = testutil::random_matrix(5, 2, 202);
    CHECK_THROWS_AS(kmeans(m, 0, 10, 1, 1), InvalidK);
    CHECK_THROWS_AS(kmeans(m, 6, 10, 1, 1), InvalidK);
}

TEST_CASE("purity definition on hand-checked cases") {
    CHECK(purity({0, 1, 2}, {0, 1, 2}) == 1.0);
    // clusters {0,0},{1,1,1} over labels {a,b,b,b}: (1 + 2) / 4
    CHECK(purity({0, 0, 1, 1}, {0, 1, 1, 1}) == 0.75);
    // one cluster over balanced classes: 1/C
    CHECK(purity({0, 0, 0, 0}, {0, 1, 2, 3}) == 0.25);
    CHECK_THROWS_AS(purity({0}, {0, 1}), LengthMismatch);
}

TEST_CASE("purity equals the oracle and ignores id permutations") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Rng rng(seed);
        const std::size_t n = 5 + rng.uniform_index(40);
        std::vector<std::size_t> assignments(n), labels(n);
        for (auto& a : assignments) a = rng.uniform_index(4);
        for (auto& l : labels) l = rng.uniform_index(3);

        const double got = purity(assignments, labels);
        CHECK(got == oracle::purity(assignments, labels));

        // permute cluster ids: 0<->3
        auto permuted = assignments;
        for (auto& a : permuted) a = a == 0 ? 3 : (a == 3 ? 0 : a);
        CHECK(purity(permuted, labels) == got);

        // permute class ids: 0<->2
        auto relabeled = labels;
        for (auto& l : relabeled) l = l == 0 ? 2 : (l == 2 ? 0 : l);
        CHECK(purity(assignments, relabeled) == got);
    }
}

TEST_CASE("purity is 1 exactly when every cluster is class-pure") {
    CHECK(purity({1, 1, 0, 0}, {0, 0, 1, 1}) == 1.0);
    CHECK(purity({0, 0, 1, 1}, {0, 1, 1, 1}) < 1.0);
}

TEST_CASE("clustering experiment on clean blobs scores purity 1") {
    const Dataset d = make_blobs(BlobSpec{.n_classes = 4,
                                          .samples_per_class = 15,
                                          .n_dims = 3,
                                          .center_spread = 60.0,
                                          .within_std = 0.4,
                                          .seed = 5});
    EPParams params;
    params.seed = 17;
    const ClusteringReport report =
        run_clustering_experiment(d, params, FeatureKind::raw, 8);
    CHECK(report.purity == 1.0);
    CHECK(report.result.k == 4);
}

TEST_CASE("clustering experiment honors a k override") {
    const Dataset d = make_blobs(BlobSpec{.n_classes = 4,
                                          .samples_per_class = 10,
                                          .n_dims = 3,
                                          .center_spread = 20.0,
                                          .within_std = 0.5,
                                          .seed = 7});
    EPParams params;
    params.seed = 19;
    const ClusteringReport report =
        run_clustering_experiment(d, params, FeatureKind::raw, 4, 100, {}, 1, 2);
    CHECK(report.result.k == 2);
}

TEST_CASE("clustering experiment needs labels for scoring") {
    Dataset unlabeled;
    unlabeled.features = testutil::random_matrix(20, 3, 6);
    EPParams params;
    CHECK_THROWS_AS(run_clustering_experiment(unlabeled, params, FeatureKind::raw, 2),
                    LabelsRequiredForPurity);
}
