#ifndef EP_ENSEMBLE_HPP
#define EP_ENSEMBLE_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "ep/dataset.hpp"
#include "ep/logreg.hpp"
#include "ep/sampling.hpp"

namespace ep {

/// Projected feature for one sample: T blocks of r softmax similarities;
/// every block sums to 1.
struct EPFeature {
    std::vector<double> values;     // length T * r
    std::size_t block_size = 0;     // r
};

/// T trained projection functions plus the parameters that produced them.
struct EnsembleModel {
    EPParams params;
    std::size_t source_dims = 0;
    std::vector<LogRegModel> projections; // params.trials models, each with r classes

    std::size_t output_dims() const { return params.trials * params.prototypes; }
};

/**
 * Fits the ensemble: for each trial t, a Max-Min prototype set is sampled
 * with an rng stream derived from params.seed and trial index, and an
 * r-class logistic regression is trained on the member rows against their
 * pseudo-labels. Labels in `d`, when present, are ignored; fitting is fully
 * unsupervised. Deterministic given (features, params); trials run on up to
 * n_threads workers with identical results for any worker count.
 */
EnsembleModel fit(const Dataset& d, const EPParams& params,
                  const TrainOptions& base_opts = {}, unsigned n_threads = 1);

/// Concatenation of every projection's softmax output on x, in trial order.
EPFeature project(const EnsembleModel& model, std::span<const double> x);

/// Row-wise projection; output row i equals project(model, row i).
FeatureMatrix project_all(const EnsembleModel& model, const FeatureMatrix& m_feat,
                          unsigned n_threads = 1);

/**
 * Binary model persistence. Layout: magic "EPM1"; u64 LE T, r, n, m, seed,
 * source_dims; per trial the r x source_dims weight matrix (row-major) then
 * the r biases, all IEEE-754 binary64 LE. Round-trips bit-exactly.
 * Throws IoError / FormatError.
 */
void save_model(const EnsembleModel& model, const std::string& path);
EnsembleModel load_model(const std::string& path);

} // namespace ep

#endif
