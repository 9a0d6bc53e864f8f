#include "metagcn/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "metagcn/error.hpp"

namespace metagcn {

std::vector<int> predict_labels(const DenseMatrix& scores, std::size_t positive_class) {
    std::vector<int> preds(scores.rows());
    const std::size_t c = scores.cols();
    for (std::size_t i = 0; i < scores.rows(); ++i) {
        if (c == 2) {
            preds[i] = scores(i, positive_class) > 0.5
                           ? static_cast<int>(positive_class)
                           : static_cast<int>(1 - positive_class);
        } else {
            std::size_t best = 0;
            for (std::size_t j = 1; j < c; ++j)
                if (scores(i, j) > scores(i, best)) best = j;
            preds[i] = static_cast<int>(best);
        }
    }
    return preds;
}

namespace {

double auc_rank(const std::vector<double>& pos_scores, const std::vector<std::size_t>& order,
                const std::vector<int>& labels, std::size_t positive_class) {
    // Average ranks with ties, then the Mann-Whitney U statistic.
    const std::size_t n = order.size();
    std::vector<double> rank(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && pos_scores[order[j + 1]] == pos_scores[order[i]]) ++j;
        const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t t = i; t <= j; ++t) rank[order[t]] = avg;
        i = j + 1;
    }
    double rank_sum_pos = 0.0;
    double n_pos = 0.0, n_neg = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        if (labels[t] == static_cast<int>(positive_class)) {
            rank_sum_pos += rank[t];
            n_pos += 1.0;
        } else {
            n_neg += 1.0;
        }
    }
    const double u = rank_sum_pos - n_pos * (n_pos + 1.0) / 2.0;
    return u / (n_pos * n_neg);
}

MetricReport metrics_impl(const DenseMatrix& scores, const std::vector<int>& labels,
                          std::size_t positive_class, bool lenient) {
    if (scores.rows() != labels.size())
        throw ShapeError("compute_metrics: scores/labels length mismatch");
    if (scores.rows() == 0) throw ParamError("compute_metrics: empty input");
    if (positive_class >= scores.cols())
        throw ParamError("compute_metrics: positive_class out of range");
    if (!scores.all_finite()) throw NumericError("compute_metrics: non-finite scores");

    const std::size_t n = scores.rows();
    const std::size_t n_classes = scores.cols();
    const std::vector<int> preds = predict_labels(scores, positive_class);

    MetricReport rep;
    std::size_t correct = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (preds[i] == labels[i]) ++correct;
    rep.accuracy = static_cast<double>(correct) / static_cast<double>(n);

    // macro F1: unweighted mean of per-class F1, zero-division -> 0
    double f1_sum = 0.0;
    for (std::size_t c = 0; c < n_classes; ++c) {
        double tp = 0.0, fp = 0.0, fn = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const bool pred_c = preds[i] == static_cast<int>(c);
            const bool true_c = labels[i] == static_cast<int>(c);
            tp += pred_c && true_c;
            fp += pred_c && !true_c;
            fn += !pred_c && true_c;
        }
        const double precision = tp + fp > 0.0 ? tp / (tp + fp) : 0.0;
        const double recall = tp + fn > 0.0 ? tp / (tp + fn) : 0.0;
        f1_sum += precision + recall > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
    }
    rep.macro_f1 = f1_sum / static_cast<double>(n_classes);

    bool has_pos = false, has_neg = false;
    for (int l : labels) (l == static_cast<int>(positive_class) ? has_pos : has_neg) = true;
    if (!has_pos || !has_neg) {
        if (!lenient)
            throw ParamError("compute_metrics: AUC undefined for single-class ground truth");
        rep.auc_roc = std::numeric_limits<double>::quiet_NaN();
        return rep;
    }

    std::vector<double> pos_scores(n);
    for (std::size_t i = 0; i < n; ++i) pos_scores[i] = scores(i, positive_class);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return pos_scores[a] < pos_scores[b] || (pos_scores[a] == pos_scores[b] && a < b);
    });
    rep.auc_roc = auc_rank(pos_scores, order, labels, positive_class);
    return rep;
}

}  // namespace

MetricReport compute_metrics(const DenseMatrix& scores, const std::vector<int>& labels,
                             std::size_t positive_class) {
    return metrics_impl(scores, labels, positive_class, false);
}

MetricReport compute_metrics_lenient(const DenseMatrix& scores, const std::vector<int>& labels,
                                     std::size_t positive_class) {
    return metrics_impl(scores, labels, positive_class, true);
}

}  // namespace metagcn
