#include "ep/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ep/errors.hpp"

namespace ep {

double squared_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw DimensionMismatch("vectors of length " + std::to_string(a.size()) + " and " +
                                std::to_string(b.size()));
    double sq = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sq += d * d;
    }
    return sq;
}

double distance(std::span<const double> a, std::span<const double> b, DistanceMetric) {
    return std::sqrt(squared_distance(a, b));
}

double avg_pairwise_distance(std::span<const std::size_t> indices, const FeatureMatrix& m) {
    if (indices.size() < 2)
        throw DegenerateSet("average pairwise distance needs at least 2 indices");
    for (const std::size_t i : indices)
        if (i >= m.n_samples)
            throw IndexOutOfRange("index " + std::to_string(i) + " >= " +
                                  std::to_string(m.n_samples));
    double total = 0.0;
    for (std::size_t a = 0; a + 1 < indices.size(); ++a)
        for (std::size_t b = a + 1; b < indices.size(); ++b)
            total += distance(m.row(indices[a]), m.row(indices[b]));
    const double pairs = 0.5 * static_cast<double>(indices.size()) *
                         static_cast<double>(indices.size() - 1);
    return total / pairs;
}

namespace {

// Shared top-n selection over (distance, rank-key) pairs.
std::vector<std::size_t> select_nearest(std::vector<double>& sq_dists,
                                        std::size_t n,
                                        std::size_t query_or_npos) {
    const std::size_t count = sq_dists.size();
    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), std::size_t{0});
    const auto cmp = [&](std::size_t a, std::size_t b) {
        if (sq_dists[a] != sq_dists[b]) return sq_dists[a] < sq_dists[b];
        // the query outranks any exact duplicate of itself
        if (a == query_or_npos) return true;
        if (b == query_or_npos) return false;
        return a < b;
    };
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n), order.end(),
                      cmp);
    order.resize(n);
    return order;
}

} // namespace

std::vector<std::size_t> nearest_neighbors(std::size_t query_index, const FeatureMatrix& m,
                                           std::size_t n) {
    if (query_index >= m.n_samples)
        throw IndexOutOfRange("query index " + std::to_string(query_index) + " >= " +
                              std::to_string(m.n_samples));
    if (n < 1 || n > m.n_samples)
        throw InvalidN("n must be in [1, " + std::to_string(m.n_samples) + "], got " +
                       std::to_string(n));
    const auto q = m.row(query_index);
    std::vector<double> sq(m.n_samples);
    for (std::size_t i = 0; i < m.n_samples; ++i) sq[i] = squared_distance(q, m.row(i));
    return select_nearest(sq, n, query_index);
}

std::vector<std::size_t> nearest_rows(std::span<const double> query, const FeatureMatrix& m,
                                      std::size_t n) {
    if (query.size() != m.n_dims)
        throw DimensionMismatch("query length " + std::to_string(query.size()) +
                                " does not match matrix width " + std::to_string(m.n_dims));
    if (n < 1 || n > m.n_samples)
        throw InvalidN("n must be in [1, " + std::to_string(m.n_samples) + "], got " +
                       std::to_string(n));
    std::vector<double> sq(m.n_samples);
    for (std::size_t i = 0; i < m.n_samples; ++i) sq[i] = squared_distance(query, m.row(i));
    return select_nearest(sq, n, static_cast<std::size_t>(-1));
}

} // namespace ep
