#ifndef EP_CLUSTERING_HPP
#define EP_CLUSTERING_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ep/dataset.hpp"
#include "ep/evaluation.hpp"
#include "ep/sampling.hpp"

namespace ep {

/// Result of one k-means run (the best restart).
struct ClusteringResult {
    std::vector<std::size_t> assignments; // cluster id per sample, in {0,...,k-1}
    std::size_t k = 0;
    double inertia = 0.0;                 // total within-cluster squared distance
    std::size_t iterations = 0;           // Lloyd iterations of the winning restart
    std::vector<double> inertia_trace;    // non-increasing, one entry per iteration
    std::vector<double> centroids;        // k x n_dims, row-major
};

/**
 * Lloyd's k-means with k-means++ seeding. Each restart draws its seeds from
 * a stream derived from `seed` and the restart index and iterates to an
 * assignment fixpoint or max_iters; the lowest-inertia restart wins (ties
 * keep the lowest restart index). Empty clusters are repaired by reseeding
 * the centroid to the point farthest from its assigned centroid.
 * Deterministic given (seed, restarts). Throws InvalidK.
 */
ClusteringResult kmeans(const FeatureMatrix& m_feat, std::size_t k, std::size_t max_iters,
                        std::size_t restarts, std::uint64_t seed, unsigned n_threads = 1);

/// Weighted purity: (1/N) * sum over clusters of the dominant class count.
double purity(const std::vector<std::size_t>& assignments,
              const std::vector<std::size_t>& true_labels);

struct ClusteringReport {
    double purity = 0.0;
    FeatureKind feature = FeatureKind::raw;
    ClusteringResult result;
};

/**
 * The clustering experiment: k defaults to the dataset's class count
 * (k_override = 0); features are clustered raw or EP-projected (labels are
 * read only for the purity score). Throws LabelsRequiredForPurity when the
 * dataset has no labels.
 */
ClusteringReport run_clustering_experiment(const Dataset& d, const EPParams& params,
                                           FeatureKind feature, std::size_t restarts,
                                           std::size_t max_iters = 100,
                                           const TrainOptions& base_opts = {},
                                           unsigned n_threads = 1,
                                           std::size_t k_override = 0);

} // namespace ep

#endif
