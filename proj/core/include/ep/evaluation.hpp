#ifndef EP_EVALUATION_HPP
#define EP_EVALUATION_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ep/dataset.hpp"
#include "ep/ensemble.hpp"
#include "ep/logreg.hpp"
#include "ep/rng.hpp"

namespace ep {

enum class ClassifierKind { knn1, logreg };
enum class FeatureKind { raw, ep };

/// One run's labeled/evaluation partition: exactly per_class labeled indices
/// from every class, drawn uniformly without replacement.
struct SplitSpec {
    std::vector<std::size_t> labeled_indices;
    std::size_t per_class = 0;
    std::uint64_t run_seed = 0;
};

/// Precision over repeated random splits plus the configuration that
/// produced it. mean and stddev are recomputable from per_run_precision.
struct ExperimentReport {
    std::vector<double> per_run_precision;
    double mean = 0.0;
    double stddev = 0.0; // sample standard deviation; 0 when runs < 2
    FeatureKind feature = FeatureKind::raw;
    ClassifierKind classifier = ClassifierKind::knn1;
    std::size_t per_class = 0;
    std::size_t runs = 0;
};

/**
 * Draws per_class labeled samples from every class, uniformly without
 * replacement; everything else forms the evaluation set. Throws
 * InsufficientClassSamples if some class is too small, LabelsRequired when
 * labels are absent, and InsufficientEvaluation when nothing is left to
 * evaluate on.
 */
SplitSpec make_split(const std::vector<std::size_t>& labels, std::size_t n_classes,
                     std::size_t per_class, std::uint64_t run_seed);

/**
 * k-nearest-neighbor classification with Euclidean distance. Distance ties
 * break by ascending training index; vote ties by lowest class id.
 */
std::vector<std::size_t> knn_classify(const FeatureMatrix& train_feats,
                                      const std::vector<std::size_t>& train_labels,
                                      const FeatureMatrix& test_feats, std::size_t k);

/// Fraction of exact matches. Throws LengthMismatch.
double precision(const std::vector<std::size_t>& predicted,
                 const std::vector<std::size_t>& truth);

/**
 * Transductive protocol: when feature == ep the ensemble is fitted once on
 * the full dataset (labels never read); each run draws a fresh split with a
 * seed derived from (params.seed, run index), trains the downstream
 * classifier on the labeled rows and scores precision on the rest. The run
 * seeds depend only on params.seed, so two invocations differing in
 * `feature` or `classifier` see identical splits (paired comparison).
 */
ExperimentReport run_semi_supervised(const Dataset& d, const EPParams& params,
                                     std::size_t per_class, std::size_t runs,
                                     ClassifierKind classifier, FeatureKind feature,
                                     const TrainOptions& downstream_opts = {},
                                     const TrainOptions& base_opts = {},
                                     unsigned n_threads = 1);

/**
 * Self-taught protocol: the ensemble is fitted on the unlabeled pool only,
 * the labeled target dataset is projected through it, and the transductive
 * split/train/score loop runs on the projected target. Throws
 * DimensionMismatch when pool and target widths differ.
 */
ExperimentReport run_self_taught(const Dataset& pool, const Dataset& target,
                                 const EPParams& params, std::size_t per_class,
                                 std::size_t runs, ClassifierKind classifier,
                                 const TrainOptions& downstream_opts = {},
                                 const TrainOptions& base_opts = {},
                                 unsigned n_threads = 1);

} // namespace ep

#endif
