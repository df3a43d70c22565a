#ifndef EP_LOGREG_HPP
#define EP_LOGREG_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "ep/dataset.hpp"

namespace ep {

/// L2-regularized multinomial (softmax) logistic-regression model.
struct LogRegModel {
    std::size_t n_classes = 0;              // K >= 2
    std::size_t n_dims = 0;                 // d
    std::vector<double> weights;            // K x d, row-major
    std::vector<double> biases;             // K

    std::span<const double> class_weights(std::size_t k) const {
        return {weights.data() + k * n_dims, n_dims};
    }
};

struct TrainOptions {
    double c_reg = 15.0;     // inverse regularization strength C
    std::size_t max_iters = 500;
    double tol = 1e-6;       // stop when the max-norm of the gradient falls below
};

/// Diagnostics returned by train() on request. Non-convergence within
/// max_iters is not an error; the caller can inspect `converged`.
struct TrainInfo {
    bool converged = false;
    std::size_t iterations = 0;
    double final_loss = 0.0;
    double grad_inf_norm = 0.0;
    std::vector<double> loss_trace; // loss after every accepted step, starting at the initial point
};

struct LossGradient {
    double loss = 0.0;
    std::vector<double> grad_weights; // K x d, row-major
    std::vector<double> grad_biases;  // K
};

/**
 * Objective, averaged over N samples with unregularized biases:
 *
 *   J(W, b) = (1/N) sum_i -log softmax(W x_i + b)[y_i]
 *           + (1/(2 c_reg N)) ||W||_F^2
 *
 * Exposed separately so the gradient can be checked against finite
 * differences. Throws DimensionMismatch on inconsistent shapes.
 */
LossGradient loss_and_gradient(std::span<const double> weights, std::span<const double> biases,
                               const FeatureMatrix& x, std::span<const std::size_t> y,
                               std::size_t n_classes, double c_reg);

/**
 * Deterministic full-batch descent on J: zero initialization, backtracking
 * line search with a sufficient-decrease test, so the loss trace is
 * monotonically non-increasing. Stops at opts.tol on the gradient max-norm
 * or after opts.max_iters steps, whichever comes first. The class count is
 * max(y)+1 and every class must appear in y.
 *
 * Throws MissingClass or NonFiniteInput.
 */
LogRegModel train(const FeatureMatrix& x, std::span<const std::size_t> y,
                  const TrainOptions& opts = {}, TrainInfo* info = nullptr);

/// softmax(W x + b), computed with max-subtraction; entries sum to 1.
std::vector<double> predict_proba(const LogRegModel& model, std::span<const double> x);

/// argmax of predict_proba; ties go to the lowest class id.
std::size_t predict(const LogRegModel& model, std::span<const double> x);

/// Row-wise predict over a matrix.
std::vector<std::size_t> predict_batch(const LogRegModel& model, const FeatureMatrix& x);

} // namespace ep

#endif
