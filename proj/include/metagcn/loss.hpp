#pragma once

#include <vector>

#include "metagcn/matrix.hpp"
#include "metagcn/model.hpp"

namespace metagcn {

// Cross-entropy per evaluated node. For sigmoid outputs the loss is the sum
// of the per-class binary cross-entropies; for softmax it is the usual
// negative log-likelihood. Either way the gradient of l_i w.r.t. the logits
// is the residual row p_i - y_i, kept here so weighted aggregates can form
// their logit gradients in closed form.
struct PerExampleLoss {
    std::vector<double> losses;
    DenseMatrix residual;  // p - y, one row per evaluated node
};

// probs must lie in (0,1); labels must be one-hot rows. Probabilities are
// clamped to [1e-12, 1-1e-12] before the logarithms.
PerExampleLoss per_example_ce(const DenseMatrix& probs, const DenseMatrix& labels_onehot,
                              OutputActivation act = OutputActivation::sigmoid);

struct WeightedLoss {
    double value = 0.0;
    DenseMatrix grad_logits;  // row i is w_i * (p_i - y_i)
};

// Sum of w_i * l_i and its logit gradient. Weights must be non-negative and
// match the number of evaluated nodes.
WeightedLoss weighted_loss(const PerExampleLoss& losses, const std::vector<double>& w);

// Unweighted mean cross-entropy over the meta examples.
double meta_loss(const DenseMatrix& probs_meta, const DenseMatrix& labels_meta,
                 OutputActivation act = OutputActivation::sigmoid);

}  // namespace metagcn
