// Test-only brute-force oracles. Everything here is computed with plain
// scalar loops and full sorts, independent of the library's code paths, so
// the two sides of every comparison cannot share a bug.
#ifndef EP_TESTS_ORACLES_HPP
#define EP_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <span>
#include <vector>

#include "ep/dataset.hpp"

namespace oracle {

inline double distance(std::span<const double> a, std::span<const double> b) {
    double sq = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sq += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(sq);
}

inline double avg_pairwise_distance(const std::vector<std::size_t>& indices,
                                    const ep::FeatureMatrix& m) {
    double total = 0.0;
    std::size_t pairs = 0;
    for (std::size_t a = 0; a < indices.size(); ++a) {
        for (std::size_t b = a + 1; b < indices.size(); ++b) {
            total += distance(m.row(indices[a]), m.row(indices[b]));
            ++pairs;
        }
    }
    return total / static_cast<double>(pairs);
}

// Full sort of every sample by (distance, query-first, index).
inline std::vector<std::size_t> nearest_neighbors(std::size_t query, const ep::FeatureMatrix& m,
                                                  std::size_t n) {
    std::vector<std::size_t> order(m.n_samples);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> dists(m.n_samples);
    for (std::size_t i = 0; i < m.n_samples; ++i) dists[i] = distance(m.row(query), m.row(i));
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (dists[a] != dists[b]) return dists[a] < dists[b];
        if (a == query) return true;
        if (b == query) return false;
        return a < b;
    });
    order.resize(n);
    return order;
}

inline std::vector<std::size_t> knn_classify(const ep::FeatureMatrix& train,
                                             const std::vector<std::size_t>& train_labels,
                                             const ep::FeatureMatrix& test, std::size_t k) {
    std::vector<std::size_t> out(test.n_samples);
    for (std::size_t q = 0; q < test.n_samples; ++q) {
        std::vector<std::size_t> order(train.n_samples);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::vector<double> dists(train.n_samples);
        for (std::size_t i = 0; i < train.n_samples; ++i)
            dists[i] = distance(test.row(q), train.row(i));
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (dists[a] != dists[b]) return dists[a] < dists[b];
            return a < b;
        });
        std::map<std::size_t, std::size_t> votes;
        for (std::size_t i = 0; i < k; ++i) ++votes[train_labels[order[i]]];
        std::size_t best_class = 0, best_votes = 0;
        for (const auto& [cls, count] : votes) {
            if (count > best_votes) { // map iterates ascending, so ties keep the lowest id
                best_votes = count;
                best_class = cls;
            }
        }
        out[q] = best_class;
    }
    return out;
}

inline double purity(const std::vector<std::size_t>& assignments,
                     const std::vector<std::size_t>& labels) {
    std::map<std::size_t, std::map<std::size_t, std::size_t>> table;
    for (std::size_t i = 0; i < assignments.size(); ++i) ++table[assignments[i]][labels[i]];
    std::size_t dominant = 0;
    for (const auto& [cluster, counts] : table) {
        std::size_t best = 0;
        for (const auto& [cls, count] : counts) best = std::max(best, count);
        dominant += best;
    }
    return static_cast<double>(dominant) / static_cast<double>(assignments.size());
}

// Per-class averaging variant of the label co-occurrence curve.
inline std::vector<double> cooccurrence_curve(const ep::FeatureMatrix& m,
                                              const std::vector<std::size_t>& labels,
                                              std::size_t n_classes, std::size_t k_max) {
    const std::size_t n = m.n_samples;
    std::vector<std::size_t> class_sizes(n_classes, 0);
    for (const std::size_t l : labels) ++class_sizes[l];

    std::vector<std::vector<std::size_t>> hits(k_max, std::vector<std::size_t>(n_classes, 0));
    for (std::size_t i = 0; i < n; ++i) {
        const auto ranked = oracle::nearest_neighbors(i, m, n); // full ranking, query first
        for (std::size_t k = 1; k <= k_max; ++k)
            if (labels[ranked[k]] == labels[i]) ++hits[k - 1][labels[i]];
    }
    std::vector<double> p(k_max);
    for (std::size_t k = 0; k < k_max; ++k) {
        double sum = 0.0;
        for (std::size_t c = 0; c < n_classes; ++c)
            sum += static_cast<double>(hits[k][c]) / static_cast<double>(class_sizes[c]);
        p[k] = sum / static_cast<double>(n_classes);
    }
    return p;
}

// Naive exp-normalize softmax computed in extended precision.
inline std::vector<double> softmax_long_double(const std::vector<double>& logits) {
    long double sum = 0.0L;
    std::vector<long double> e(logits.size());
    for (std::size_t i = 0; i < logits.size(); ++i) {
        const long double m = *std::max_element(logits.begin(), logits.end());
        e[i] = expl(static_cast<long double>(logits[i]) - m);
    }
    for (const long double v : e) sum += v;
    std::vector<double> out(logits.size());
    for (std::size_t i = 0; i < logits.size(); ++i) out[i] = static_cast<double>(e[i] / sum);
    return out;
}

// Central finite differences of a scalar function of a parameter vector.
template <typename LossFn>
std::vector<double> finite_difference_gradient(const LossFn& loss, std::vector<double> params,
                                               double h = 1e-5) {
    std::vector<double> grad(params.size());
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double orig = params[i];
        params[i] = orig + h;
        const double up = loss(params);
        params[i] = orig - h;
        const double down = loss(params);
        params[i] = orig;
        grad[i] = (up - down) / (2.0 * h);
    }
    return grad;
}

} // namespace oracle

#endif
