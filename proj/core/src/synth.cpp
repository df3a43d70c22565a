#include "ep/synth.hpp"

#include "ep/errors.hpp"
#include "ep/rng.hpp"

namespace ep {

Dataset make_blobs(const BlobSpec& spec) {
    if (spec.n_classes < 1 || spec.samples_per_class < 1 || spec.n_dims < 1)
        throw InvalidSpec("blob spec sizes must be positive");
    if (spec.center_spread <= 0.0) throw InvalidSpec("center_spread must be positive");
    if (spec.within_std < 0.0) throw InvalidSpec("within_std must be non-negative");

    Rng rng(spec.seed);
    const std::size_t n = spec.n_classes * spec.samples_per_class;

    std::vector<double> centers(spec.n_classes * spec.n_dims);
    const double half = spec.center_spread / 2.0;
    for (double& c : centers) c = rng.uniform_real(-half, half);

    Dataset d;
    d.features = FeatureMatrix(n, spec.n_dims);
    d.labels = std::vector<std::size_t>(n);
    d.n_classes = spec.n_classes;
    std::size_t row = 0;
    for (std::size_t k = 0; k < spec.n_classes; ++k) {
        for (std::size_t s = 0; s < spec.samples_per_class; ++s, ++row) {
            auto out = d.features.row(row);
            for (std::size_t j = 0; j < spec.n_dims; ++j)
                out[j] = centers[k * spec.n_dims + j] + spec.within_std * rng.normal();
            (*d.labels)[row] = k;
        }
    }
    return d;
}

} // namespace ep
