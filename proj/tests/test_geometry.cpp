#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ep/errors.hpp"
#include "ep/geometry.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace ep;

TEST_CASE("distance basics") {
    const std::vector<double> a{3.1, -2.0};
    CHECK(distance(a, a) == 0.0);

    const std::vector<double> p{0.0, 0.0}, q{3.0, 4.0};
    CHECK(distance(p, q) == doctest::Approx(5.0).epsilon(1e-15));

    const std::vector<double> short_vec{1.0};
    CHECK_THROWS_AS(distance(p, short_vec), DimensionMismatch);
}

TEST_CASE("distance matches the scalar-loop oracle on random vectors") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto m = testutil::random_matrix(2, 10, seed);
        const double got = distance(m.row(0), m.row(1));
        const double want = oracle::distance(m.row(0), m.row(1));
        CHECK(got == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("metric axioms on random inputs") {
    for (std::uint64_t seed = 100; seed < 140; ++seed) {
        const auto m = testutil::random_matrix(3, 6, seed);
        const double ab = distance(m.row(0), m.row(1));
        const double ba = distance(m.row(1), m.row(0));
        const double ac = distance(m.row(0), m.row(2));
        const double cb = distance(m.row(2), m.row(1));
        CHECK(ab == doctest::Approx(ba).epsilon(1e-12)); // symmetry
        CHECK(ab <= ac + cb + 1e-12);                    // triangle inequality
    }
}

TEST_CASE("avg_pairwise_distance small cases") {
    // two points: just their distance
    const FeatureMatrix two(2, 1, {0.0, 3.0});
    const std::vector<std::size_t> pair{0, 1};
    CHECK(avg_pairwise_distance(pair, two) == doctest::Approx(3.0));

    // three collinear equally spaced points: (d + d + 2d) / 3
    const FeatureMatrix three(3, 1, {0.0, 1.5, 3.0});
    const std::vector<std::size_t> all{0, 1, 2};
    CHECK(avg_pairwise_distance(all, three) == doctest::Approx(4.0 * 1.5 / 3.0));
}

TEST_CASE("avg_pairwise_distance error cases") {
    const FeatureMatrix m(3, 1, {0.0, 1.0, 2.0});
    const std::vector<std::size_t> one{0};
    CHECK_THROWS_AS(avg_pairwise_distance(one, m), DegenerateSet);
    const std::vector<std::size_t> oob{0, 5};
    CHECK_THROWS_AS(avg_pairwise_distance(oob, m), IndexOutOfRange);
}

TEST_CASE("avg_pairwise_distance equals brute force and ignores permutation") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto m = testutil::random_matrix(12, 4, seed);
        Rng rng(seed * 7 + 1);
        auto indices = rng.sample_without_replacement(12, 5);
        const double got = avg_pairwise_distance(indices, m);
        const double want = oracle::avg_pairwise_distance(indices, m);
        CHECK(got == doctest::Approx(want).epsilon(1e-12));

        auto shuffled = indices;
        rng.shuffle(shuffled);
        // permutation reorders the FP summation, so allow the last ulps
        CHECK(avg_pairwise_distance(shuffled, m) == doctest::Approx(got).epsilon(1e-12));
    }
}

TEST_CASE("nearest_neighbors basics") {
    const FeatureMatrix m(3, 1, {0.0, 1.0, 10.0});
    CHECK(nearest_neighbors(0, m, 1) == std::vector<std::size_t>{0});
    CHECK(nearest_neighbors(0, m, 2) == std::vector<std::size_t>{0, 1});
    CHECK(nearest_neighbors(2, m, 2) == std::vector<std::size_t>{2, 1});

    CHECK_THROWS_AS(nearest_neighbors(5, m, 1), IndexOutOfRange);
    CHECK_THROWS_AS(nearest_neighbors(0, m, 0), InvalidN);
    CHECK_THROWS_AS(nearest_neighbors(0, m, 4), InvalidN);
}

TEST_CASE("nearest_neighbors matches the full-sort oracle") {
    const auto m = testutil::random_matrix(50, 8, 42);
    for (std::size_t query = 0; query < m.n_samples; ++query) {
        const auto got = nearest_neighbors(query, m, 7);
        const auto want = oracle::nearest_neighbors(query, m, 7);
        CHECK(got == want);
    }
}

TEST_CASE("nearest_neighbors output is sorted, duplicate-free and starts at the query") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const auto m = testutil::random_matrix(20, 3, seed);
        Rng rng(seed);
        const std::size_t query = rng.uniform_index(20);
        const std::size_t n = 1 + rng.uniform_index(20);
        const auto got = nearest_neighbors(query, m, n);

        REQUIRE(got.size() == n);
        CHECK(got.front() == query);
        std::vector<bool> seen(m.n_samples, false);
        double prev = -1.0;
        for (const std::size_t idx : got) {
            CHECK_FALSE(seen[idx]);
            seen[idx] = true;
            const double dist = distance(m.row(query), m.row(idx));
            CHECK(dist >= prev);
            prev = dist;
        }
    }
}

TEST_CASE("nearest_neighbors ranks the query before an exact duplicate") {
    // row 0 duplicates row 2; query 2 must still come first in its own list
    const FeatureMatrix m(3, 1, {5.0, 7.0, 5.0});
    const auto got = nearest_neighbors(2, m, 3);
    CHECK(got == std::vector<std::size_t>{2, 0, 1});
}

TEST_CASE("nearest_rows handles queries outside the matrix") {
    const FeatureMatrix m(3, 1, {0.0, 1.0, 10.0});
    const std::vector<double> q{0.9};
    CHECK(nearest_rows(q, m, 2) == std::vector<std::size_t>{1, 0});
    const std::vector<double> wrong{0.9, 1.0};
    CHECK_THROWS_AS(nearest_rows(wrong, m, 1), DimensionMismatch);
}
