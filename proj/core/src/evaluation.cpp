#include "ep/evaluation.hpp"

#include <algorithm>
#include <cmath>

#include "ep/errors.hpp"
#include "ep/geometry.hpp"
#include "ep/parallel.hpp"

namespace ep {

SplitSpec make_split(const std::vector<std::size_t>& labels, std::size_t n_classes,
                     std::size_t per_class, std::uint64_t run_seed) {
    if (labels.empty()) throw LabelsRequired("cannot split an unlabeled dataset");
    if (per_class < 1) throw InvalidParams("per_class must be at least 1");

    std::vector<std::vector<std::size_t>> by_class(n_classes);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] >= n_classes) throw ValidationError("label out of range");
        by_class[labels[i]].push_back(i);
    }
    for (std::size_t c = 0; c < n_classes; ++c)
        if (by_class[c].size() < per_class)
            throw InsufficientClassSamples("class " + std::to_string(c) + " has " +
                                           std::to_string(by_class[c].size()) +
                                           " samples, need " + std::to_string(per_class));
    if (n_classes * per_class == labels.size())
        throw InsufficientEvaluation("no samples left to evaluate on");

    Rng rng(run_seed);
    SplitSpec split;
    split.per_class = per_class;
    split.run_seed = run_seed;
    for (std::size_t c = 0; c < n_classes; ++c) {
        const auto picks = rng.sample_without_replacement(by_class[c].size(), per_class);
        for (const std::size_t p : picks) split.labeled_indices.push_back(by_class[c][p]);
    }
    std::sort(split.labeled_indices.begin(), split.labeled_indices.end());
    return split;
}

std::vector<std::size_t> knn_classify(const FeatureMatrix& train_feats,
                                      const std::vector<std::size_t>& train_labels,
                                      const FeatureMatrix& test_feats, std::size_t k) {
    if (train_labels.size() != train_feats.n_samples)
        throw LengthMismatch("training labels do not match training rows");
    if (train_feats.n_dims != test_feats.n_dims)
        throw DimensionMismatch("train and test feature widths differ");

    std::size_t n_classes = 0;
    for (const std::size_t l : train_labels) n_classes = std::max(n_classes, l + 1);

    std::vector<std::size_t> predictions(test_feats.n_samples);
    std::vector<std::size_t> votes(n_classes);
    for (std::size_t i = 0; i < test_feats.n_samples; ++i) {
        const auto neighbors = nearest_rows(test_feats.row(i), train_feats, k);
        std::fill(votes.begin(), votes.end(), 0);
        for (const std::size_t idx : neighbors) ++votes[train_labels[idx]];
        std::size_t best = 0;
        for (std::size_t c = 1; c < n_classes; ++c)
            if (votes[c] > votes[best]) best = c; // vote ties keep the lowest class id
        predictions[i] = best;
    }
    return predictions;
}

double precision(const std::vector<std::size_t>& predicted,
                 const std::vector<std::size_t>& truth) {
    if (predicted.size() != truth.size())
        throw LengthMismatch("prediction and truth lengths differ");
    if (predicted.empty()) throw LengthMismatch("nothing to score");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i)
        if (predicted[i] == truth[i]) ++hits;
    return static_cast<double>(hits) / static_cast<double>(predicted.size());
}

namespace {

void finish_report(ExperimentReport& report) {
    const std::size_t n = report.per_run_precision.size();
    double sum = 0.0;
    for (const double p : report.per_run_precision) sum += p;
    report.mean = sum / static_cast<double>(n);
    if (n >= 2) {
        double sq = 0.0;
        for (const double p : report.per_run_precision) {
            const double d = p - report.mean;
            sq += d * d;
        }
        report.stddev = std::sqrt(sq / static_cast<double>(n - 1));
    } else {
        report.stddev = 0.0;
    }
}

// Shared split/train/score loop; `features` are whatever representation the
// downstream classifier should see. Run seeds depend only on (seed, run).
ExperimentReport transductive_eval(const FeatureMatrix& features,
                                   const std::vector<std::size_t>& labels,
                                   std::size_t n_classes, std::uint64_t seed,
                                   std::size_t per_class, std::size_t runs,
                                   ClassifierKind classifier,
                                   const TrainOptions& downstream_opts, unsigned n_threads) {
    if (runs < 1) throw InvalidParams("runs must be at least 1");

    ExperimentReport report;
    report.per_run_precision.resize(runs);
    report.classifier = classifier;
    report.per_class = per_class;
    report.runs = runs;

    parallel_for(runs, n_threads, [&](std::size_t run) {
        const SplitSpec split =
            make_split(labels, n_classes, per_class, derive_seed(seed, stream::split(run)));

        std::vector<bool> is_labeled(labels.size(), false);
        for (const std::size_t i : split.labeled_indices) is_labeled[i] = true;
        std::vector<std::size_t> eval_indices;
        eval_indices.reserve(labels.size() - split.labeled_indices.size());
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (!is_labeled[i]) eval_indices.push_back(i);

        const FeatureMatrix train_feats = gather_rows(features, split.labeled_indices);
        std::vector<std::size_t> train_labels(split.labeled_indices.size());
        for (std::size_t i = 0; i < split.labeled_indices.size(); ++i)
            train_labels[i] = labels[split.labeled_indices[i]];
        const FeatureMatrix eval_feats = gather_rows(features, eval_indices);
        std::vector<std::size_t> eval_labels(eval_indices.size());
        for (std::size_t i = 0; i < eval_indices.size(); ++i)
            eval_labels[i] = labels[eval_indices[i]];

        std::vector<std::size_t> predictions;
        if (classifier == ClassifierKind::knn1) {
            predictions = knn_classify(train_feats, train_labels, eval_feats, 1);
        } else {
            const LogRegModel model = train(train_feats, train_labels, downstream_opts);
            predictions = predict_batch(model, eval_feats);
        }
        report.per_run_precision[run] = precision(predictions, eval_labels);
    });

    finish_report(report);
    return report;
}

} // namespace

ExperimentReport run_semi_supervised(const Dataset& d, const EPParams& params,
                                     std::size_t per_class, std::size_t runs,
                                     ClassifierKind classifier, FeatureKind feature,
                                     const TrainOptions& downstream_opts,
                                     const TrainOptions& base_opts, unsigned n_threads) {
    if (!d.has_labels()) throw LabelsRequired("semi-supervised evaluation needs labels");

    const FeatureMatrix* features = &d.features;
    FeatureMatrix projected;
    if (feature == FeatureKind::ep) {
        // hand the fit a label-stripped view; the split labels stay out of reach
        const EnsembleModel model = fit(d.without_labels(), params, base_opts, n_threads);
        projected = project_all(model, d.features, n_threads);
        features = &projected;
    }
    ExperimentReport report =
        transductive_eval(*features, *d.labels, *d.n_classes, params.seed, per_class, runs,
                          classifier, downstream_opts, n_threads);
    report.feature = feature;
    return report;
}

ExperimentReport run_self_taught(const Dataset& pool, const Dataset& target,
                                 const EPParams& params, std::size_t per_class,
                                 std::size_t runs, ClassifierKind classifier,
                                 const TrainOptions& downstream_opts,
                                 const TrainOptions& base_opts, unsigned n_threads) {
    if (pool.n_dims() != target.n_dims())
        throw DimensionMismatch("pool width " + std::to_string(pool.n_dims()) +
                                " does not match target width " +
                                std::to_string(target.n_dims()));
    if (!target.has_labels()) throw LabelsRequired("self-taught evaluation needs target labels");

    const EnsembleModel model = fit(pool.without_labels(), params, base_opts, n_threads);
    const FeatureMatrix projected = project_all(model, target.features, n_threads);
    ExperimentReport report =
        transductive_eval(projected, *target.labels, *target.n_classes, params.seed, per_class,
                          runs, classifier, downstream_opts, n_threads);
    report.feature = FeatureKind::ep;
    return report;
}

} // namespace ep
