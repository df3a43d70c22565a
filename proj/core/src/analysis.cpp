#include "ep/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "ep/errors.hpp"
#include "ep/geometry.hpp"
#include "ep/parallel.hpp"

namespace ep {

CooccurrenceCurve label_cooccurrence_curve(const Dataset& d, std::size_t k_max,
                                           CooccurrenceAveraging averaging,
                                           unsigned n_threads) {
    if (!d.has_labels()) throw LabelsRequired("co-occurrence curve needs labels");
    const std::size_t n = d.n_samples();
    if (k_max < 1 || k_max >= n)
        throw InvalidKMax("k_max must be in [1, " + std::to_string(n - 1) + "], got " +
                          std::to_string(k_max));

    const auto& labels = *d.labels;
    const std::size_t n_classes = *d.n_classes;

    // match[i * k_max + (k-1)] = 1 iff the k-th neighbor of i shares i's label
    std::vector<unsigned char> match(n * k_max, 0);
    parallel_for(n, n_threads, [&](std::size_t i) {
        const auto ranked = nearest_neighbors(i, d.features, k_max + 1);
        for (std::size_t k = 1; k <= k_max; ++k)
            match[i * k_max + (k - 1)] = labels[ranked[k]] == labels[i] ? 1 : 0;
    });

    CooccurrenceCurve curve;
    curve.p.resize(k_max);
    if (averaging == CooccurrenceAveraging::per_image) {
        for (std::size_t k = 0; k < k_max; ++k) {
            std::size_t hits = 0;
            for (std::size_t i = 0; i < n; ++i) hits += match[i * k_max + k];
            curve.p[k] = static_cast<double>(hits) / static_cast<double>(n);
        }
    } else {
        std::vector<std::size_t> class_sizes(n_classes, 0);
        for (const std::size_t l : labels) ++class_sizes[l];
        for (std::size_t k = 0; k < k_max; ++k) {
            std::vector<std::size_t> hits(n_classes, 0);
            for (std::size_t i = 0; i < n; ++i) hits[labels[i]] += match[i * k_max + k];
            double sum = 0.0;
            for (std::size_t c = 0; c < n_classes; ++c)
                sum += static_cast<double>(hits[c]) / static_cast<double>(class_sizes[c]);
            curve.p[k] = sum / static_cast<double>(n_classes);
        }
    }
    return curve;
}

std::vector<std::size_t> corrupt_labels(std::span<const std::size_t> labels, double rate,
                                        std::size_t n_classes, NoiseMode mode, Rng& rng) {
    if (rate < 0.0 || rate >= 1.0) throw InvalidConfig("noise rate must be in [0, 1)");
    if (n_classes < 2) throw InvalidConfig("label corruption needs at least 2 classes");

    std::vector<std::size_t> out(labels.begin(), labels.end());
    const auto count = static_cast<std::size_t>(
        std::llround(rate * static_cast<double>(labels.size())));
    if (count == 0) return out;

    const auto positions = rng.sample_without_replacement(labels.size(), count);
    for (const std::size_t pos : positions) {
        if (mode == NoiseMode::reassign_distinct) {
            const std::size_t draw = static_cast<std::size_t>(rng.uniform_index(n_classes - 1));
            out[pos] = draw >= out[pos] ? draw + 1 : draw;
        } else {
            out[pos] = static_cast<std::size_t>(rng.uniform_index(n_classes));
        }
    }
    return out;
}

NoiseSimResult ensemble_noise_simulation(const Dataset& d, const NoiseSimConfig& cfg,
                                         std::vector<std::size_t> t_grid,
                                         const TrainOptions& opts, unsigned n_threads) {
    if (!d.has_labels()) throw LabelsRequired("noise simulation needs labels");
    if (cfg.noise_rate < 0.0 || cfg.noise_rate >= 1.0)
        throw InvalidConfig("noise rate must be in [0, 1)");
    if (cfg.subsample_fraction <= 0.0 || cfg.subsample_fraction > 1.0)
        throw InvalidConfig("subsample fraction must be in (0, 1]");
    if (cfg.train_fraction <= 0.0 || cfg.train_fraction >= 1.0)
        throw InvalidConfig("train fraction must be in (0, 1)");
    if (cfg.t_max < 1) throw InvalidConfig("t_max must be at least 1");
    if (t_grid.empty()) throw InvalidConfig("empty T grid");
    std::sort(t_grid.begin(), t_grid.end());
    t_grid.erase(std::unique(t_grid.begin(), t_grid.end()), t_grid.end());
    if (t_grid.front() < 1 || t_grid.back() > cfg.t_max)
        throw InvalidConfig("T grid values must lie in [1, t_max]");

    const std::size_t n = d.n_samples();
    const std::size_t n_classes = *d.n_classes;
    const auto& labels = *d.labels;

    // fixed held-out split
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    Rng split_rng(derive_seed(cfg.seed, stream::holdout()));
    split_rng.shuffle(order);
    std::size_t n_train = static_cast<std::size_t>(
        std::llround(cfg.train_fraction * static_cast<double>(n)));
    n_train = std::clamp<std::size_t>(n_train, 1, n - 1);
    std::vector<std::size_t> train_idx(order.begin(), order.begin() + n_train);
    std::vector<std::size_t> test_idx(order.begin() + n_train, order.end());
    std::sort(train_idx.begin(), train_idx.end());
    std::sort(test_idx.begin(), test_idx.end());

    std::vector<std::size_t> train_labels(n_train);
    std::vector<bool> present(n_classes, false);
    for (std::size_t i = 0; i < n_train; ++i) {
        train_labels[i] = labels[train_idx[i]];
        present[train_labels[i]] = true;
    }
    for (std::size_t c = 0; c < n_classes; ++c)
        if (!present[c])
            throw InvalidConfig("training split lost class " + std::to_string(c) +
                                "; raise the train fraction");

    const FeatureMatrix train_feats = gather_rows(d.features, train_idx);
    const FeatureMatrix test_feats = gather_rows(d.features, test_idx);
    std::vector<std::size_t> test_labels(test_idx.size());
    for (std::size_t i = 0; i < test_idx.size(); ++i) test_labels[i] = labels[test_idx[i]];

    std::size_t subsample = static_cast<std::size_t>(
        std::llround(cfg.subsample_fraction * static_cast<double>(n_train)));
    subsample = std::clamp<std::size_t>(subsample, 1, n_train);

    // one row of test predictions per trial
    const std::size_t n_test = test_idx.size();
    std::vector<std::size_t> predictions(cfg.t_max * n_test);
    parallel_for(cfg.t_max, n_threads, [&](std::size_t t) {
        Rng rng(derive_seed(cfg.seed, stream::noise_trial(t)));
        std::vector<std::size_t> sub_labels;
        std::vector<std::size_t> sub_idx;
        // redraw until the corrupted subsample still mentions every class;
        // vanishingly rare at sane sizes but required by the trainer
        for (int attempt = 0;; ++attempt) {
            if (attempt >= 100)
                throw InvalidConfig("could not draw a subsample covering every class");
            sub_idx = rng.sample_without_replacement(n_train, subsample);
            std::vector<std::size_t> raw(subsample);
            for (std::size_t i = 0; i < subsample; ++i) raw[i] = train_labels[sub_idx[i]];
            sub_labels = corrupt_labels(raw, cfg.noise_rate, n_classes, cfg.mode, rng);
            std::vector<bool> seen(n_classes, false);
            for (const std::size_t l : sub_labels) seen[l] = true;
            if (std::find(seen.begin(), seen.end(), false) == seen.end()) break;
        }
        const FeatureMatrix sub_feats = gather_rows(train_feats, sub_idx);
        const LogRegModel model = train(sub_feats, sub_labels, opts);
        const auto preds = predict_batch(model, test_feats);
        std::copy(preds.begin(), preds.end(), predictions.begin() + t * n_test);
    });

    // majority vote over growing prefixes of trials
    NoiseSimResult result;
    result.t_grid = t_grid;
    result.accuracy.resize(t_grid.size());
    std::vector<std::size_t> votes(n_test * n_classes, 0);
    std::size_t grid_pos = 0;
    for (std::size_t t = 0; t < cfg.t_max && grid_pos < t_grid.size(); ++t) {
        for (std::size_t i = 0; i < n_test; ++i) ++votes[i * n_classes + predictions[t * n_test + i]];
        if (t + 1 == t_grid[grid_pos]) {
            std::size_t hits = 0;
            for (std::size_t i = 0; i < n_test; ++i) {
                std::size_t mode_class = 0;
                for (std::size_t c = 1; c < n_classes; ++c)
                    if (votes[i * n_classes + c] > votes[i * n_classes + mode_class])
                        mode_class = c;
                if (mode_class == test_labels[i]) ++hits;
            }
            result.accuracy[grid_pos] = static_cast<double>(hits) / static_cast<double>(n_test);
            ++grid_pos;
        }
    }
    return result;
}

} // namespace ep
