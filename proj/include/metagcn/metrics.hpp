#pragma once

#include <vector>

#include "metagcn/matrix.hpp"

namespace metagcn {

struct MetricReport {
    double accuracy = 0.0;
    double macro_f1 = 0.0;
    double auc_roc = 0.0;
};

// Accuracy, macro-F1 and AUC-ROC from an N x C score matrix.
//
// Binary prediction thresholds the positive-class score at 0.5; with more
// classes the argmax wins (ties to the lower index). Per-class F1 with a
// zero denominator counts as 0. AUC uses the Mann-Whitney statistic on the
// positive-class column, ties credited one half.
//
// Throws ParamError when the ground truth contains a single class (AUC
// undefined).
MetricReport compute_metrics(const DenseMatrix& scores, const std::vector<int>& labels,
                             std::size_t positive_class);

// Same, but a single-class ground truth yields auc_roc = NaN instead of a
// throw; used by training loops on small validation splits.
MetricReport compute_metrics_lenient(const DenseMatrix& scores, const std::vector<int>& labels,
                                     std::size_t positive_class);

std::vector<int> predict_labels(const DenseMatrix& scores, std::size_t positive_class);

}  // namespace metagcn
