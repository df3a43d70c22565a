#ifndef EP_ANALYSIS_HPP
#define EP_ANALYSIS_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ep/dataset.hpp"
#include "ep/logreg.hpp"
#include "ep/rng.hpp"

namespace ep {

/// p[k-1] = probability that the k-th nearest neighbor of a sample shares
/// its class, for k = 1..k_max.
struct CooccurrenceCurve {
    std::vector<double> p;
};

/// per_class: mean of the per-image indicators within each class, then the
/// mean over classes. per_image: plain mean over all images.
enum class CooccurrenceAveraging { per_class, per_image };

/**
 * Ranks, for every sample, all other samples by distance (self excluded)
 * and tabulates how often the k-th neighbor carries the same label.
 * Throws LabelsRequired / InvalidKMax (k_max must be in [1, n_samples-1]).
 */
CooccurrenceCurve label_cooccurrence_curve(const Dataset& d, std::size_t k_max,
                                           CooccurrenceAveraging averaging =
                                               CooccurrenceAveraging::per_class,
                                           unsigned n_threads = 1);

/// How corrupted labels are redrawn. reassign_any draws uniformly over all C
/// classes (a redraw may restate the original label); reassign_distinct
/// draws over the other C-1 classes, making the requested rate the exact
/// fraction of labels changed.
enum class NoiseMode { reassign_any, reassign_distinct };

struct NoiseSimConfig {
    double noise_rate = 0.0;          // R in [0, 1)
    std::size_t t_max = 100;          // trials available to the vote
    double subsample_fraction = 0.3;  // share of the training split used per trial
    double train_fraction = 0.5;      // share of the dataset held as training data
    NoiseMode mode = NoiseMode::reassign_any;
    std::uint64_t seed = 0;
};

/**
 * Reassigns the labels of exactly round(rate * labels.size()) positions,
 * chosen uniformly without replacement. Throws InvalidConfig.
 */
std::vector<std::size_t> corrupt_labels(std::span<const std::size_t> labels, double rate,
                                        std::size_t n_classes, NoiseMode mode, Rng& rng);

/// Majority-vote accuracy over the first T weak classifiers, per grid point.
struct NoiseSimResult {
    std::vector<std::size_t> t_grid;
    std::vector<double> accuracy; // one entry per grid point
};

/**
 * The weak-training-set simulation: the dataset is split once into train
 * and test; every trial subsamples the training split, corrupts an R
 * fraction of the subsample's labels, and trains one logistic regression.
 * A test point's prediction at budget T is the mode of its first T trial
 * predictions (ties to the lowest class id). Deterministic given cfg.seed.
 * Throws LabelsRequired / InvalidConfig.
 */
NoiseSimResult ensemble_noise_simulation(const Dataset& d, const NoiseSimConfig& cfg,
                                         std::vector<std::size_t> t_grid,
                                         const TrainOptions& opts = {},
                                         unsigned n_threads = 1);

} // namespace ep

#endif
