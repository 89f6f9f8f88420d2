#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace nusample {

struct ConfusionMatrix {
    std::size_t tp = 0, fn = 0, fp = 0, tn = 0;
    std::size_t total() const noexcept { return tp + fn + fp + tn; }
    friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

ConfusionMatrix confusion_matrix(std::span<const std::string> y_true, std::span<const std::string> y_pred,
                                 const std::string& positive);

struct PrecisionRecallF1 {
    double precision = 0.0, recall = 0.0, f1 = 0.0;
};

/// 0/0 gives 0.
PrecisionRecallF1 precision_recall_f1(const ConfusionMatrix& cm);

/// sqrt(TPR * TNR). With literal_counts the raw sqrt(tp * tn) is returned
/// instead (not a rate; kept for audits only).
double gmean(const ConfusionMatrix& cm, bool literal_counts = false);

/// Mann-Whitney AUC with average ranks for ties.
double auc(std::span<const std::string> y_true, std::span<const double> scores, const std::string& positive);

enum class Metric { auc, gmean, f1 };

std::string to_string(Metric m);
Metric parse_metric(const std::string& s);

}  // namespace nusample
