#include "ep/logreg.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "ep/errors.hpp"

namespace ep {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MapMat = Eigen::Map<const RowMat>;
using Eigen::VectorXd;

// Row-wise log-sum-exp with max subtraction. logits is modified in place to
// hold the softmax probabilities when `want_probs` is set.
double data_loss(RowMat& logits, std::span<const std::size_t> y, bool want_probs) {
    const Eigen::Index n = logits.rows();
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        auto row = logits.row(i);
        const double m = row.maxCoeff();
        const double sum = (row.array() - m).exp().sum();
        total += std::log(sum) + m - row[static_cast<Eigen::Index>(y[i])];
        if (want_probs) row = ((row.array() - m).exp() / sum).matrix();
    }
    return total / static_cast<double>(n);
}

struct Problem {
    MapMat x;
    std::span<const std::size_t> y;
    std::size_t n_classes;
    double c_reg;

    double loss(const RowMat& w, const VectorXd& b) const {
        RowMat logits = x * w.transpose();
        logits.rowwise() += b.transpose();
        const double reg = w.squaredNorm() /
                           (2.0 * c_reg * static_cast<double>(x.rows()));
        return data_loss(logits, y, false) + reg;
    }

    double loss_grad(const RowMat& w, const VectorXd& b, RowMat& gw, VectorXd& gb) const {
        const double n = static_cast<double>(x.rows());
        RowMat probs = x * w.transpose();
        probs.rowwise() += b.transpose();
        const double loss = data_loss(probs, y, true) + w.squaredNorm() / (2.0 * c_reg * n);
        for (Eigen::Index i = 0; i < probs.rows(); ++i)
            probs(i, static_cast<Eigen::Index>(y[i])) -= 1.0;
        probs /= n;
        gw = probs.transpose() * x;
        gw += w / (c_reg * n);
        gb = probs.colwise().sum().transpose();
        return loss;
    }
};

std::size_t checked_class_count(std::span<const std::size_t> y) {
    if (y.empty()) throw MissingClass("empty label array");
    std::size_t max_label = 0;
    for (const std::size_t l : y) max_label = std::max(max_label, l);
    const std::size_t k = max_label + 1;
    if (k < 2) throw MissingClass("need at least 2 classes, got 1");
    std::vector<bool> seen(k, false);
    for (const std::size_t l : y) seen[l] = true;
    for (std::size_t c = 0; c < k; ++c)
        if (!seen[c]) throw MissingClass("class " + std::to_string(c) + " absent from labels");
    return k;
}

} // namespace

LossGradient loss_and_gradient(std::span<const double> weights, std::span<const double> biases,
                               const FeatureMatrix& x, std::span<const std::size_t> y,
                               std::size_t n_classes, double c_reg) {
    if (weights.size() != n_classes * x.n_dims || biases.size() != n_classes)
        throw DimensionMismatch("parameter shapes do not match K=" + std::to_string(n_classes) +
                                ", d=" + std::to_string(x.n_dims));
    if (y.size() != x.n_samples)
        throw DimensionMismatch("label count does not match sample count");
    for (const std::size_t l : y)
        if (l >= n_classes) throw DimensionMismatch("label out of range");

    const MapMat xm(x.values.data(), static_cast<Eigen::Index>(x.n_samples),
                    static_cast<Eigen::Index>(x.n_dims));
    const Problem problem{xm, y, n_classes, c_reg};
    RowMat w = Eigen::Map<const RowMat>(weights.data(), static_cast<Eigen::Index>(n_classes),
                                        static_cast<Eigen::Index>(x.n_dims));
    VectorXd b = Eigen::Map<const VectorXd>(biases.data(), static_cast<Eigen::Index>(n_classes));

    RowMat gw;
    VectorXd gb;
    LossGradient out;
    out.loss = problem.loss_grad(w, b, gw, gb);
    out.grad_weights.assign(gw.data(), gw.data() + gw.size());
    out.grad_biases.assign(gb.data(), gb.data() + gb.size());
    return out;
}

LogRegModel train(const FeatureMatrix& x, std::span<const std::size_t> y,
                  const TrainOptions& opts, TrainInfo* info) {
    if (y.size() != x.n_samples)
        throw DimensionMismatch("label count does not match sample count");
    for (const double v : x.values)
        if (!std::isfinite(v)) throw NonFiniteInput("training matrix contains a non-finite value");
    const std::size_t k = checked_class_count(y);

    const MapMat xm(x.values.data(), static_cast<Eigen::Index>(x.n_samples),
                    static_cast<Eigen::Index>(x.n_dims));
    const Problem problem{xm, y, k, opts.c_reg};

    RowMat w = RowMat::Zero(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(x.n_dims));
    VectorXd b = VectorXd::Zero(static_cast<Eigen::Index>(k));
    RowMat gw;
    VectorXd gb;

    constexpr double kArmijo = 1e-4;
    constexpr double kMinStep = 1e-20;

    double loss = problem.loss_grad(w, b, gw, gb);
    double step = 1.0;
    bool converged = false;
    std::size_t iter = 0;
    if (info) {
        info->loss_trace.clear();
        info->loss_trace.push_back(loss);
    }

    for (; iter < opts.max_iters; ++iter) {
        const double grad_inf = std::max(gw.cwiseAbs().maxCoeff(), gb.cwiseAbs().maxCoeff());
        if (grad_inf <= opts.tol) {
            converged = true;
            break;
        }
        const double grad_sq = gw.squaredNorm() + gb.squaredNorm();

        double s = step * 2.0;
        bool accepted = false;
        RowMat w_next;
        VectorXd b_next;
        while (s >= kMinStep) {
            w_next = w - s * gw;
            b_next = b - s * gb;
            if (problem.loss(w_next, b_next) <= loss - kArmijo * s * grad_sq) {
                accepted = true;
                break;
            }
            s *= 0.5;
        }
        if (!accepted) break; // flat to machine precision; keep the best iterate

        w.swap(w_next);
        b.swap(b_next);
        step = s;
        loss = problem.loss_grad(w, b, gw, gb);
        if (info) info->loss_trace.push_back(loss);
    }

    if (info) {
        info->converged = converged;
        info->iterations = iter;
        info->final_loss = loss;
        info->grad_inf_norm = std::max(gw.cwiseAbs().maxCoeff(), gb.cwiseAbs().maxCoeff());
    }

    LogRegModel model;
    model.n_classes = k;
    model.n_dims = x.n_dims;
    model.weights.assign(w.data(), w.data() + w.size());
    model.biases.assign(b.data(), b.data() + b.size());
    return model;
}

std::vector<double> predict_proba(const LogRegModel& model, std::span<const double> x) {
    if (x.size() != model.n_dims)
        throw DimensionMismatch("input length " + std::to_string(x.size()) +
                                " does not match model dims " + std::to_string(model.n_dims));
    std::vector<double> logits(model.n_classes);
    for (std::size_t c = 0; c < model.n_classes; ++c) {
        const auto wc = model.class_weights(c);
        double dot = model.biases[c];
        for (std::size_t j = 0; j < model.n_dims; ++j) dot += wc[j] * x[j];
        logits[c] = dot;
    }
    const double m = *std::max_element(logits.begin(), logits.end());
    double sum = 0.0;
    for (double& l : logits) {
        l = std::exp(l - m);
        sum += l;
    }
    for (double& l : logits) l /= sum;
    return logits;
}

std::size_t predict(const LogRegModel& model, std::span<const double> x) {
    const auto probs = predict_proba(model, x);
    std::size_t best = 0;
    for (std::size_t c = 1; c < probs.size(); ++c)
        if (probs[c] > probs[best]) best = c;
    return best;
}

std::vector<std::size_t> predict_batch(const LogRegModel& model, const FeatureMatrix& x) {
    std::vector<std::size_t> out(x.n_samples);
    for (std::size_t i = 0; i < x.n_samples; ++i) out[i] = predict(model, x.row(i));
    return out;
}

} // namespace ep
