#include "ep/sampling.hpp"

#include <string>

#include "ep/errors.hpp"
#include "ep/geometry.hpp"

namespace ep {

void EPParams::validate_for(std::size_t n_samples) const {
    if (trials < 1) throw InvalidParams("T must be at least 1");
    if (prototypes < 2) throw InvalidParams("r must be at least 2");
    if (per_prototype < 1) throw InvalidParams("n must be at least 1");
    if (hypotheses < 1) throw InvalidParams("m must be at least 1");
    if (prototypes > n_samples)
        throw InvalidParams("r = " + std::to_string(prototypes) + " exceeds sample count " +
                            std::to_string(n_samples));
    if (per_prototype > n_samples)
        throw InvalidParams("n = " + std::to_string(per_prototype) + " exceeds sample count " +
                            std::to_string(n_samples));
}

std::vector<std::size_t> sample_skeleton(const FeatureMatrix& m_feat, std::size_t r,
                                         std::size_t m, Rng& rng,
                                         const HypothesisRecorder& recorder) {
    if (r < 2 || r > m_feat.n_samples)
        throw InvalidParams("skeleton size r must be in [2, n_samples]");
    if (m < 1) throw InvalidParams("hypothesis count m must be at least 1");

    std::vector<std::size_t> best;
    double best_spread = -1.0;
    for (std::size_t h = 0; h < m; ++h) {
        std::vector<std::size_t> candidate = rng.sample_without_replacement(m_feat.n_samples, r);
        if (recorder) recorder(candidate);
        const double spread = avg_pairwise_distance(candidate, m_feat);
        if (spread > best_spread) { // strict: ties keep the earlier hypothesis
            best_spread = spread;
            best = std::move(candidate);
        }
    }
    return best;
}

PrototypeSet expand_prototypes(const FeatureMatrix& m_feat,
                               std::span<const std::size_t> skeleton, std::size_t n) {
    if (skeleton.empty()) throw InvalidParams("skeleton is empty");
    if (n < 1 || n > m_feat.n_samples)
        throw InvalidParams("n must be in [1, n_samples]");

    PrototypeSet set;
    set.prototypes = skeleton.size();
    set.per_prototype = n;
    set.member_indices.reserve(skeleton.size() * n);
    set.pseudo_labels.reserve(skeleton.size() * n);
    for (std::size_t k = 0; k < skeleton.size(); ++k) {
        const auto members = nearest_neighbors(skeleton[k], m_feat, n);
        for (const std::size_t idx : members) {
            set.member_indices.push_back(idx);
            set.pseudo_labels.push_back(k);
        }
    }
    return set;
}

PrototypeSet max_min_sample(const FeatureMatrix& m_feat, const EPParams& params, Rng& trial_rng) {
    params.validate_for(m_feat.n_samples);
    const auto skeleton =
        sample_skeleton(m_feat, params.prototypes, params.hypotheses, trial_rng);
    return expand_prototypes(m_feat, skeleton, params.per_prototype);
}

} // namespace ep
