#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nusample/matrix.hpp"

namespace nusample {

enum class ClassifierKind { knn, logreg, sgd_hinge };

std::string to_string(ClassifierKind k);
/// Accepts "knn", "logreg", "sgd" and "sgd_hinge".
ClassifierKind parse_classifier_kind(const std::string& s);

struct ClassifierConfig {
    std::size_t k = 5;  // knn; clamped to the training size at fit time
    double logreg_lr = 0.1;
    std::size_t logreg_epochs = 500;
    double sgd_lr = 0.01;
    std::size_t sgd_epochs = 200;
};

struct ClassifierModel {
    ClassifierKind kind = ClassifierKind::knn;
    std::string positive_label;
    std::string negative_label;
    // knn
    Matrix train_x;
    std::vector<bool> train_positive;
    std::size_t k = 0;
    // linear kinds
    std::vector<double> weights;
    double bias = 0.0;

    /// Score above which a row is predicted positive.
    double decision_threshold() const { return kind == ClassifierKind::knn ? 0.5 : 0.0; }
};

/// Fits a binary classifier. `positive_label` must be one of the two labels
/// present in y.
ClassifierModel fit_classifier(ClassifierKind kind, const Matrix& x, const std::vector<std::string>& y,
                               const std::string& positive_label, const ClassifierConfig& cfg = {},
                               std::uint64_t seed = 0);

/// Higher means more likely positive.
std::vector<double> score(const ClassifierModel& model, const Matrix& x);

std::vector<std::string> predict(const ClassifierModel& model, const Matrix& x);

}  // namespace nusample
