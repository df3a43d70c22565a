#include "ep/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ep/errors.hpp"
#include "ep/geometry.hpp"
#include "ep/parallel.hpp"
#include "ep/rng.hpp"

namespace ep {

namespace {

// k-means++: each next seed is drawn with probability proportional to the
// squared distance to its nearest already-chosen seed.
std::vector<double> seed_centroids(const FeatureMatrix& m, std::size_t k, Rng& rng) {
    const std::size_t n = m.n_samples;
    std::vector<double> centroids(k * m.n_dims);
    std::vector<double> nearest_sq(n, std::numeric_limits<double>::infinity());

    std::size_t first = static_cast<std::size_t>(rng.uniform_index(n));
    std::copy(m.row(first).begin(), m.row(first).end(), centroids.begin());

    for (std::size_t c = 1; c < k; ++c) {
        const std::span<const double> last{centroids.data() + (c - 1) * m.n_dims, m.n_dims};
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            nearest_sq[i] = std::min(nearest_sq[i], squared_distance(m.row(i), last));
            total += nearest_sq[i];
        }
        std::size_t chosen;
        if (total > 0.0) {
            const double target = rng.uniform_real() * total;
            double cum = 0.0;
            chosen = n - 1;
            for (std::size_t i = 0; i < n; ++i) {
                cum += nearest_sq[i];
                if (cum > target) {
                    chosen = i;
                    break;
                }
            }
        } else {
            chosen = static_cast<std::size_t>(rng.uniform_index(n)); // all points coincide
        }
        std::copy(m.row(chosen).begin(), m.row(chosen).end(),
                  centroids.begin() + static_cast<std::ptrdiff_t>(c * m.n_dims));
    }
    return centroids;
}

ClusteringResult lloyd(const FeatureMatrix& m, std::size_t k, std::size_t max_iters, Rng& rng) {
    const std::size_t n = m.n_samples;
    const std::size_t d = m.n_dims;

    ClusteringResult res;
    res.k = k;
    res.centroids = seed_centroids(m, k, rng);
    res.assignments.assign(n, 0);

    std::vector<std::size_t> counts(k);
    std::vector<std::size_t> previous;

    auto centroid = [&](std::size_t c) {
        return std::span<const double>{res.centroids.data() + c * d, d};
    };

    for (std::size_t iter = 1; iter <= max_iters; ++iter) {
        // assignment step; ties go to the lowest cluster id
        bool repaired = false;
        for (std::size_t i = 0; i < n; ++i) {
            double best_sq = std::numeric_limits<double>::infinity();
            std::size_t best = 0;
            for (std::size_t c = 0; c < k; ++c) {
                const double sq = squared_distance(m.row(i), centroid(c));
                if (sq < best_sq) {
                    best_sq = sq;
                    best = c;
                }
            }
            res.assignments[i] = best;
        }

        // empty-cluster repair: reseed onto the point farthest from its centroid
        std::fill(counts.begin(), counts.end(), 0);
        for (const std::size_t a : res.assignments) ++counts[a];
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] != 0) continue;
            double worst = -1.0;
            std::size_t worst_point = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (counts[res.assignments[i]] <= 1) continue; // do not empty another cluster
                const double sq = squared_distance(m.row(i), centroid(res.assignments[i]));
                if (sq > worst) {
                    worst = sq;
                    worst_point = i;
                }
            }
            if (worst < 0.0) break; // nothing movable (k near n with duplicates)
            --counts[res.assignments[worst_point]];
            res.assignments[worst_point] = c;
            ++counts[c];
            std::copy(m.row(worst_point).begin(), m.row(worst_point).end(),
                      res.centroids.begin() + static_cast<std::ptrdiff_t>(c * d));
            repaired = true;
        }

        const bool converged = !repaired && !previous.empty() && previous == res.assignments;
        previous = res.assignments;

        // update step: every centroid with members moves to their mean
        std::vector<double> sums(k * d, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const auto row = m.row(i);
            double* target = sums.data() + res.assignments[i] * d;
            for (std::size_t j = 0; j < d; ++j) target[j] += row[j];
        }
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] == 0) continue;
            const double inv = 1.0 / static_cast<double>(counts[c]);
            for (std::size_t j = 0; j < d; ++j) res.centroids[c * d + j] = sums[c * d + j] * inv;
        }

        double inertia = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            inertia += squared_distance(m.row(i), centroid(res.assignments[i]));
        res.inertia_trace.push_back(inertia);
        res.inertia = inertia;
        res.iterations = iter;
        if (converged) break;
    }
    return res;
}

} // namespace

ClusteringResult kmeans(const FeatureMatrix& m_feat, std::size_t k, std::size_t max_iters,
                        std::size_t restarts, std::uint64_t seed, unsigned n_threads) {
    if (k < 1 || k > m_feat.n_samples)
        throw InvalidK("k must be in [1, " + std::to_string(m_feat.n_samples) + "], got " +
                       std::to_string(k));
    if (max_iters < 1) throw InvalidK("max_iters must be at least 1");
    if (restarts < 1) throw InvalidK("restarts must be at least 1");

    std::vector<ClusteringResult> candidates(restarts);
    parallel_for(restarts, n_threads, [&](std::size_t s) {
        Rng rng(derive_seed(seed, stream::restart(s)));
        candidates[s] = lloyd(m_feat, k, max_iters, rng);
    });

    std::size_t best = 0;
    for (std::size_t s = 1; s < restarts; ++s)
        if (candidates[s].inertia < candidates[best].inertia) best = s;
    return std::move(candidates[best]);
}

double purity(const std::vector<std::size_t>& assignments,
              const std::vector<std::size_t>& true_labels) {
    if (assignments.size() != true_labels.size())
        throw LengthMismatch("assignment and label lengths differ");
    if (assignments.empty()) throw LengthMismatch("nothing to score");

    std::size_t n_clusters = 0, n_classes = 0;
    for (const std::size_t a : assignments) n_clusters = std::max(n_clusters, a + 1);
    for (const std::size_t l : true_labels) n_classes = std::max(n_classes, l + 1);

    std::vector<std::size_t> counts(n_clusters * n_classes, 0);
    for (std::size_t i = 0; i < assignments.size(); ++i)
        ++counts[assignments[i] * n_classes + true_labels[i]];

    std::size_t dominant_total = 0;
    for (std::size_t c = 0; c < n_clusters; ++c) {
        std::size_t dominant = 0;
        for (std::size_t l = 0; l < n_classes; ++l)
            dominant = std::max(dominant, counts[c * n_classes + l]);
        dominant_total += dominant;
    }
    return static_cast<double>(dominant_total) / static_cast<double>(assignments.size());
}

ClusteringReport run_clustering_experiment(const Dataset& d, const EPParams& params,
                                           FeatureKind feature, std::size_t restarts,
                                           std::size_t max_iters,
                                           const TrainOptions& base_opts, unsigned n_threads,
                                           std::size_t k_override) {
    if (!d.has_labels())
        throw LabelsRequiredForPurity("clustering experiment needs labels for the purity score");
    const std::size_t k = k_override == 0 ? *d.n_classes : k_override;

    const FeatureMatrix* features = &d.features;
    FeatureMatrix projected;
    if (feature == FeatureKind::ep) {
        const EnsembleModel model = fit(d.without_labels(), params, base_opts, n_threads);
        projected = project_all(model, d.features, n_threads);
        features = &projected;
    }

    ClusteringReport report;
    report.feature = feature;
    report.result = kmeans(*features, k, max_iters, restarts, params.seed, n_threads);
    report.purity = purity(report.result.assignments, *d.labels);
    return report;
}

} // namespace ep
