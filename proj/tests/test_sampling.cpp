#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "ep/errors.hpp"
#include "ep/geometry.hpp"
#include "ep/sampling.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace ep;

namespace {

// checks the PrototypeSet type invariants against the geometry oracle
void check_prototype_set(const PrototypeSet& set, const FeatureMatrix& m) {
    const std::size_t r = set.prototypes;
    const std::size_t n = set.per_prototype;
    REQUIRE(set.member_indices.size() == r * n);
    REQUIRE(set.pseudo_labels.size() == r * n);

    std::vector<std::size_t> label_counts(r, 0);
    for (const std::size_t l : set.pseudo_labels) {
        REQUIRE(l < r);
        ++label_counts[l];
    }
    for (const std::size_t c : label_counts) CHECK(c == n); // exactly n per pseudo-label

    for (std::size_t k = 0; k < r; ++k) {
        std::vector<std::size_t> members(set.member_indices.begin() + k * n,
                                         set.member_indices.begin() + (k + 1) * n);
        const std::set<std::size_t> unique(members.begin(), members.end());
        CHECK(unique.size() == members.size()); // within-prototype distinctness

        // members are exactly the oracle's nearest neighbors of the seed
        const std::size_t seed = members.front();
        CHECK(members == oracle::nearest_neighbors(seed, m, n));
    }
}

} // namespace

TEST_CASE("skeleton covering the whole dataset is the full index set") {
    const auto m = testutil::random_matrix(6, 3, 1);
    Rng rng(2);
    auto skeleton = sample_skeleton(m, 6, 10, rng);
    std::sort(skeleton.begin(), skeleton.end());
    CHECK(skeleton == std::vector<std::size_t>{0, 1, 2, 3, 4, 5});
}

TEST_CASE("a single hypothesis wins by default") {
    const auto m = testutil::random_matrix(10, 2, 3);
    std::vector<std::vector<std::size_t>> recorded;
    Rng rng(4);
    const auto skeleton = sample_skeleton(m, 3, 1, rng, [&](std::span<const std::size_t> h) {
        recorded.emplace_back(h.begin(), h.end());
    });
    REQUIRE(recorded.size() == 1);
    CHECK(skeleton == recorded[0]);
}

TEST_CASE("chosen skeleton beats every recorded hypothesis") {
    const auto m = testutil::random_matrix(20, 2, 5);
    std::vector<std::vector<std::size_t>> recorded;
    Rng rng(6);
    const auto skeleton = sample_skeleton(m, 3, 200, rng, [&](std::span<const std::size_t> h) {
        recorded.emplace_back(h.begin(), h.end());
    });
    REQUIRE(recorded.size() == 200);

    const double chosen = oracle::avg_pairwise_distance(skeleton, m);
    for (const auto& hypothesis : recorded)
        CHECK(chosen >= oracle::avg_pairwise_distance(hypothesis, m));
}

TEST_CASE("hypotheses have no duplicate indices") {
    const auto m = testutil::random_matrix(8, 2, 7);
    Rng rng(8);
    sample_skeleton(m, 5, 50, rng, [&](std::span<const std::size_t> h) {
        const std::set<std::size_t> unique(h.begin(), h.end());
        CHECK(unique.size() == h.size());
    });
}

TEST_CASE("positive scaling leaves the chosen skeleton unchanged") {
    const auto m = testutil::random_matrix(30, 4, 9);
    for (const double scale : {4.0, 3.7}) {
        auto scaled = m;
        for (double& v : scaled.values) v *= scale;
        Rng rng_a(10), rng_b(10);
        CHECK(sample_skeleton(m, 4, 40, rng_a) == sample_skeleton(scaled, 4, 40, rng_b));
    }
}

TEST_CASE("expand_prototypes with n=1 returns the bare skeleton") {
    const auto m = testutil::random_matrix(10, 2, 11);
    const std::vector<std::size_t> skeleton{7, 2, 4};
    const PrototypeSet set = expand_prototypes(m, skeleton, 1);
    CHECK(set.member_indices == skeleton);
    CHECK(set.pseudo_labels == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("expand_prototypes picks the obvious 1-D clusters") {
    const FeatureMatrix m(4, 1, {0.0, 0.1, 5.0, 5.1});
    const std::vector<std::size_t> skeleton{0, 2};
    const PrototypeSet set = expand_prototypes(m, skeleton, 2);
    CHECK(set.member_indices == std::vector<std::size_t>{0, 1, 2, 3});
    CHECK(set.pseudo_labels == std::vector<std::size_t>{0, 0, 1, 1});
}

TEST_CASE("expanded prototypes agree with the brute-force knn oracle") {
    const auto m = testutil::random_matrix(40, 5, 12);
    Rng rng(13);
    const auto skeleton = sample_skeleton(m, 5, 20, rng);
    check_prototype_set(expand_prototypes(m, skeleton, 4), m);
}

TEST_CASE("max_min_sample composes the two steps") {
    const FeatureMatrix m(4, 1, {0.0, 0.1, 5.0, 5.1});
    EPParams params;
    params.prototypes = 2;
    params.per_prototype = 2;
    params.hypotheses = 30;
    Rng rng_composed(14), rng_steps(14);

    const PrototypeSet composed = max_min_sample(m, params, rng_composed);
    const auto skeleton = sample_skeleton(m, 2, 30, rng_steps);
    const PrototypeSet stepwise = expand_prototypes(m, skeleton, 2);
    CHECK(composed.member_indices == stepwise.member_indices);
    CHECK(composed.pseudo_labels == stepwise.pseudo_labels);
}

TEST_CASE("a fixed rng seed reproduces the prototype set exactly") {
    const auto m = testutil::random_matrix(50, 4, 15);
    EPParams params;
    params.prototypes = 6;
    params.per_prototype = 3;
    params.hypotheses = 25;
    Rng a(99), b(99);
    const PrototypeSet first = max_min_sample(m, params, a);
    const PrototypeSet second = max_min_sample(m, params, b);
    CHECK(first.member_indices == second.member_indices);
    CHECK(first.pseudo_labels == second.pseudo_labels);
}

TEST_CASE("different trial seeds give different prototype sets") {
    const auto m = testutil::random_matrix(100, 6, 16);
    EPParams params;
    params.prototypes = 8;
    params.per_prototype = 4;
    params.hypotheses = 20;
    Rng a(derive_seed(1, stream::trial(0))), b(derive_seed(1, stream::trial(1)));
    CHECK(max_min_sample(m, params, a).member_indices !=
          max_min_sample(m, params, b).member_indices);
}

TEST_CASE("prototype-set invariants hold on random instances") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng(seed);
        const std::size_t n_samples = 10 + rng.uniform_index(40);
        const std::size_t dims = 1 + rng.uniform_index(6);
        const auto m = testutil::random_matrix(n_samples, dims, seed + 500);

        EPParams params;
        params.prototypes = 2 + rng.uniform_index(std::min<std::size_t>(n_samples - 1, 8));
        params.per_prototype = 1 + rng.uniform_index(std::min<std::size_t>(n_samples, 6));
        params.hypotheses = 1 + rng.uniform_index(30);
        Rng trial(seed);
        check_prototype_set(max_min_sample(m, params, trial), m);
    }
}

TEST_CASE("invalid parameters are rejected") {
    const auto m = testutil::random_matrix(5, 2, 17);
    EPParams params;
    params.prototypes = 6; // more prototypes than samples
    CHECK_THROWS_AS(params.validate_for(m.n_samples), InvalidParams);
    Rng rng(1);
    CHECK_THROWS_AS(max_min_sample(m, params, rng), InvalidParams);
    CHECK_THROWS_AS(sample_skeleton(m, 1, 5, rng), InvalidParams);
    CHECK_THROWS_AS(expand_prototypes(m, std::vector<std::size_t>{0, 1}, 9), InvalidParams);
}
