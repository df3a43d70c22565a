#ifndef EP_SAMPLING_HPP
#define EP_SAMPLING_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ep/dataset.hpp"
#include "ep/rng.hpp"

namespace ep {

/// Ensemble-projection parameters: T trials of r prototypes, each expanded to
/// its n nearest neighbors, with the skeleton chosen among m random hypotheses.
struct EPParams {
    std::size_t trials = 100;        // T
    std::size_t prototypes = 30;     // r
    std::size_t per_prototype = 6;   // n
    std::size_t hypotheses = 50;     // m
    std::uint64_t seed = 0;

    /// Throws InvalidParams unless valid for a dataset of `n_samples` rows.
    void validate_for(std::size_t n_samples) const;
};

/// One trial's pseudo-labeled surrogate training set: r prototypes of n
/// members each, stored prototype-major. Pseudo-labels take exactly the
/// values {0,...,r-1}, n times each; member k*n+j is the j-th nearest
/// neighbor of prototype k's seed.
struct PrototypeSet {
    std::size_t prototypes = 0;          // r
    std::size_t per_prototype = 0;       // n
    std::vector<std::size_t> member_indices; // r*n sample indices
    std::vector<std::size_t> pseudo_labels;  // r*n values in {0,...,r-1}

    std::size_t size() const { return member_indices.size(); }
};

/// Test hook: observes every hypothesis drawn by sample_skeleton.
using HypothesisRecorder = std::function<void(std::span<const std::size_t>)>;

/**
 * Max step: draws m hypotheses of r distinct indices sampled uniformly
 * without replacement and returns the one with the largest average pairwise
 * distance. Ties keep the earlier draw. Deterministic given the rng state.
 */
std::vector<std::size_t> sample_skeleton(const FeatureMatrix& m_feat, std::size_t r,
                                         std::size_t m, Rng& rng,
                                         const HypothesisRecorder& recorder = {});

/**
 * Min step: expands each skeleton seed to its n nearest neighbors (the seed
 * itself included) and assigns all of them the seed's position as
 * pseudo-label. Distinct prototypes may share members.
 */
PrototypeSet expand_prototypes(const FeatureMatrix& m_feat,
                               std::span<const std::size_t> skeleton, std::size_t n);

/// One full Max-Min trial: expand_prototypes over sample_skeleton.
PrototypeSet max_min_sample(const FeatureMatrix& m_feat, const EPParams& params, Rng& trial_rng);

} // namespace ep

#endif
