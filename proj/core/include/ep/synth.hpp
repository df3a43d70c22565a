#ifndef EP_SYNTH_HPP
#define EP_SYNTH_HPP

#include <cstddef>
#include <cstdint>

#include "ep/dataset.hpp"

namespace ep {

/// Gaussian-blob generator spec. Class centers are drawn uniformly in the
/// hypercube [-center_spread/2, center_spread/2]^n_dims; samples are drawn
/// isotropically around their center with standard deviation within_std.
struct BlobSpec {
    std::size_t n_classes = 2;
    std::size_t samples_per_class = 10;
    std::size_t n_dims = 2;
    double center_spread = 10.0;
    double within_std = 1.0;
    std::uint64_t seed = 0;
};

/// Deterministic labeled blob dataset; samples are laid out class by class.
/// Throws InvalidSpec on non-positive sizes or spreads.
Dataset make_blobs(const BlobSpec& spec);

} // namespace ep

#endif
