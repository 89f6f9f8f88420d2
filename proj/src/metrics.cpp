#include "nusample/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nusample/error.hpp"

namespace nusample {

ConfusionMatrix confusion_matrix(std::span<const std::string> y_true, std::span<const std::string> y_pred,
                                 const std::string& positive) {
    if (y_true.size() != y_pred.size())
        throw Error(ErrorKind::length_mismatch, "confusion_matrix: " + std::to_string(y_true.size()) + " labels vs " +
                                                    std::to_string(y_pred.size()) + " predictions");
    if (y_true.empty()) throw Error(ErrorKind::empty_input, "confusion_matrix: no samples");
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        const bool t = y_true[i] == positive, p = y_pred[i] == positive;
        if (t && p) ++cm.tp;
        else if (t) ++cm.fn;
        else if (p) ++cm.fp;
        else ++cm.tn;
    }
    return cm;
}

namespace {
double ratio(double num, double den) { return den == 0.0 ? 0.0 : num / den; }
}  // namespace

PrecisionRecallF1 precision_recall_f1(const ConfusionMatrix& cm) {
    PrecisionRecallF1 r;
    r.precision = ratio(double(cm.tp), double(cm.tp + cm.fp));
    r.recall = ratio(double(cm.tp), double(cm.tp + cm.fn));
    r.f1 = ratio(2.0 * r.precision * r.recall, r.precision + r.recall);
    return r;
}

double gmean(const ConfusionMatrix& cm, bool literal_counts) {
    if (literal_counts) return std::sqrt(double(cm.tp) * double(cm.tn));
    const double tpr = ratio(double(cm.tp), double(cm.tp + cm.fn));
    const double tnr = ratio(double(cm.tn), double(cm.tn + cm.fp));
    return std::sqrt(tpr * tnr);
}

double auc(std::span<const std::string> y_true, std::span<const double> scores, const std::string& positive) {
    if (y_true.size() != scores.size())
        throw Error(ErrorKind::length_mismatch, "auc: labels and scores differ in length");
    const std::size_t n = scores.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // ranks are 1-based; a tie block shares the mean of its ranks
    double pos_rank_sum = 0.0;
    std::size_t n_pos = 0;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && scores[order[j]] == scores[order[i]]) ++j;
        const double mid = (double(i + 1) + double(j)) / 2.0;
        for (std::size_t t = i; t < j; ++t)
            if (y_true[order[t]] == positive) {
                pos_rank_sum += mid;
                ++n_pos;
            }
        i = j;
    }
    const std::size_t n_neg = n - n_pos;
    if (n_pos == 0 || n_neg == 0) throw Error(ErrorKind::single_class, "auc: both classes must be present");
    const double u = pos_rank_sum - double(n_pos) * double(n_pos + 1) / 2.0;
    return u / (double(n_pos) * double(n_neg));
}

std::string to_string(Metric m) {
    switch (m) {
        case Metric::auc: return "auc";
        case Metric::gmean: return "gmean";
        case Metric::f1: return "f1";
    }
    return "auc";
}

Metric parse_metric(const std::string& s) {
    if (s == "auc") return Metric::auc;
    if (s == "gmean") return Metric::gmean;
    if (s == "f1") return Metric::f1;
    throw Error(ErrorKind::config, "unknown metric '" + s + "'");
}

}  // namespace nusample
