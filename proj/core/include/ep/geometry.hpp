#ifndef EP_GEOMETRY_HPP
#define EP_GEOMETRY_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "ep/dataset.hpp"

namespace ep {

/// Only the Euclidean metric is defined in v1; the enum is the extension point.
enum class DistanceMetric { euclidean };

/// L2 distance between two vectors of equal length. Throws DimensionMismatch.
double distance(std::span<const double> a, std::span<const double> b,
                DistanceMetric metric = DistanceMetric::euclidean);

/// Squared L2 distance; avoids the sqrt where only the ordering matters.
double squared_distance(std::span<const double> a, std::span<const double> b);

/**
 * Mean distance over all unordered distinct pairs drawn from `indices`.
 * Requires at least two distinct in-range indices; throws DegenerateSet or
 * IndexOutOfRange otherwise.
 */
double avg_pairwise_distance(std::span<const std::size_t> indices, const FeatureMatrix& m);

/**
 * Exact brute-force k-nearest-neighbor query. Returns the n sample indices
 * closest to row `query_index`, ascending by (distance, index), except that
 * the query itself always ranks first. Throws IndexOutOfRange / InvalidN.
 */
std::vector<std::size_t> nearest_neighbors(std::size_t query_index, const FeatureMatrix& m,
                                           std::size_t n);

/**
 * Nearest neighbors of an arbitrary vector among the rows of `m` (the vector
 * need not be a row of `m`). Ordering is ascending (distance, index).
 */
std::vector<std::size_t> nearest_rows(std::span<const double> query, const FeatureMatrix& m,
                                      std::size_t n);

} // namespace ep

#endif
