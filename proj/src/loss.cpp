#include "metagcn/loss.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "metagcn/error.hpp"

namespace metagcn {

namespace {

constexpr double kProbClamp = 1e-12;

double clamped_log(double p) {
    return std::log(std::clamp(p, kProbClamp, 1.0 - kProbClamp));
}

void check_onehot(const DenseMatrix& labels) {
    for (std::size_t i = 0; i < labels.rows(); ++i) {
        double sum = 0.0;
        for (double v : labels.row(i)) {
            if (v != 0.0 && v != 1.0)
                throw ContractError("labels: row " + std::to_string(i) + " is not one-hot");
            sum += v;
        }
        if (sum != 1.0)
            throw ContractError("labels: row " + std::to_string(i) + " is not one-hot");
    }
}

}  // namespace

PerExampleLoss per_example_ce(const DenseMatrix& probs, const DenseMatrix& labels_onehot,
                              OutputActivation act) {
    if (!probs.same_shape(labels_onehot))
        throw ShapeError("per_example_ce: probs and labels shapes differ");
    check_onehot(labels_onehot);
    PerExampleLoss out;
    out.losses.resize(probs.rows());
    out.residual = elementwise(probs, labels_onehot, Elementwise::sub);
    for (std::size_t i = 0; i < probs.rows(); ++i) {
        double l = 0.0;
        const auto p = probs.row(i);
        const auto y = labels_onehot.row(i);
        for (std::size_t c = 0; c < p.size(); ++c) {
            if (act == OutputActivation::sigmoid)
                l -= y[c] * clamped_log(p[c]) + (1.0 - y[c]) * clamped_log(1.0 - p[c]);
            else if (y[c] == 1.0)
                l -= clamped_log(p[c]);
        }
        out.losses[i] = l;
    }
    return out;
}

WeightedLoss weighted_loss(const PerExampleLoss& losses, const std::vector<double>& w) {
    if (w.size() != losses.losses.size())
        throw ShapeError("weighted_loss: weight count does not match loss count");
    for (double v : w)
        if (!(v >= 0.0)) throw ContractError("weighted_loss: weights must be non-negative");
    WeightedLoss out;
    out.grad_logits = losses.residual;
    for (std::size_t i = 0; i < w.size(); ++i) {
        out.value += w[i] * losses.losses[i];
        for (double& g : out.grad_logits.row(i)) g *= w[i];
    }
    return out;
}

double meta_loss(const DenseMatrix& probs_meta, const DenseMatrix& labels_meta,
                 OutputActivation act) {
    if (probs_meta.rows() == 0) throw ParamError("meta_loss: empty meta set");
    const PerExampleLoss pel = per_example_ce(probs_meta, labels_meta, act);
    double acc = 0.0;
    for (double l : pel.losses) acc += l;
    return acc / static_cast<double>(pel.losses.size());
}

}  // namespace metagcn
