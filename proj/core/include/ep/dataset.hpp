#ifndef EP_DATASET_HPP
#define EP_DATASET_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ep {

/**
 * Dense row-major matrix of per-sample feature vectors, 64-bit reals.
 *
 * Invariants (enforced by validate()): n_samples >= 1, n_dims >= 1,
 * values.size() == n_samples * n_dims, every value finite.
 */
struct FeatureMatrix {
    std::size_t n_samples = 0;
    std::size_t n_dims = 0;
    std::vector<double> values; // row-major, n_samples * n_dims

    FeatureMatrix() = default;
    FeatureMatrix(std::size_t samples, std::size_t dims)
        : n_samples(samples), n_dims(dims), values(samples * dims, 0.0) {}
    FeatureMatrix(std::size_t samples, std::size_t dims, std::vector<double> vals)
        : n_samples(samples), n_dims(dims), values(std::move(vals)) {}

    std::span<const double> row(std::size_t i) const {
        return {values.data() + i * n_dims, n_dims};
    }
    std::span<double> row(std::size_t i) {
        return {values.data() + i * n_dims, n_dims};
    }

    /// Throws ValidationError on shape mismatch or non-finite values.
    void validate() const;
};

/**
 * A FeatureMatrix with optional integer class labels in {0,...,C-1}.
 *
 * When labels are present every class id below n_classes must occur at
 * least once and labels.size() must equal features.n_samples.
 */
struct Dataset {
    FeatureMatrix features;
    std::optional<std::vector<std::size_t>> labels;
    std::optional<std::size_t> n_classes;

    bool has_labels() const { return labels.has_value(); }
    std::size_t n_samples() const { return features.n_samples; }
    std::size_t n_dims() const { return features.n_dims; }

    /// Copy without labels; used to make the unsupervised contract explicit.
    Dataset without_labels() const { return Dataset{features, std::nullopt, std::nullopt}; }

    /// Throws ValidationError if any invariant fails.
    void validate() const;
};

enum class FileFormat { csv, epb };

/**
 * Loads a dataset from disk.
 *
 * CSV features: one sample per line, comma-separated decimal numbers, no
 * header. epb features: magic "EPB1", u64 LE n_samples, u64 LE n_dims,
 * then IEEE-754 binary64 LE values row-major. Labels (optional) are always
 * a text file with one non-negative integer per line; n_classes is inferred
 * as max(label)+1.
 *
 * Throws ParseError on malformed input, ValidationError on invariant
 * violations, IoError if a file cannot be opened, FormatError on a bad
 * epb header or truncated payload.
 */
Dataset load_dataset(const std::string& features_path,
                     const std::optional<std::string>& labels_path,
                     FileFormat format);

/**
 * Persists a dataset. epb round-trips bit-exactly; CSV uses shortest
 * round-trip decimal formatting, so reloaded values equal the originals.
 * Throws IoError when a path cannot be written.
 */
void save_dataset(const Dataset& d, const std::string& features_path,
                  const std::optional<std::string>& labels_path, FileFormat format);

/// In-place L2 normalization of every row; zero rows are left untouched.
void l2_normalize_rows(FeatureMatrix& m);

/// New matrix holding the given rows, in order. Throws IndexOutOfRange.
FeatureMatrix gather_rows(const FeatureMatrix& m, std::span<const std::size_t> indices);

} // namespace ep

#endif
