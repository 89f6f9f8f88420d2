#include "nusample/classifiers.hpp"

#include <cmath>
#include <numeric>

#include "nusample/error.hpp"
#include "nusample/neighbors.hpp"
#include "nusample/rng.hpp"
#include "nusample/simd.hpp"

namespace nusample {

std::string to_string(ClassifierKind k) {
    switch (k) {
        case ClassifierKind::knn: return "knn";
        case ClassifierKind::logreg: return "logreg";
        case ClassifierKind::sgd_hinge: return "sgd";
    }
    return "knn";
}

ClassifierKind parse_classifier_kind(const std::string& s) {
    if (s == "knn") return ClassifierKind::knn;
    if (s == "logreg") return ClassifierKind::logreg;
    if (s == "sgd" || s == "sgd_hinge") return ClassifierKind::sgd_hinge;
    throw Error(ErrorKind::config, "unknown classifier '" + s + "'");
}

namespace {

double sigmoid(double z) {
    if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

void fit_logreg(ClassifierModel& m, const Matrix& x, const std::vector<bool>& pos, const ClassifierConfig& cfg) {
    const std::size_t n = x.rows(), d = x.cols();
    m.weights.assign(d, 0.0);
    m.bias = 0.0;
    std::vector<double> grad(d);
    const auto& kern = simd::kernels();
    for (std::size_t epoch = 0; epoch < cfg.logreg_epochs; ++epoch) {
        std::fill(grad.begin(), grad.end(), 0.0);
        double gb = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double z = kern.dot(m.weights.data(), x.row(i).data(), d) + m.bias;
            const double r = sigmoid(z) - (pos[i] ? 1.0 : 0.0);
            kern.axpy(r, x.row(i).data(), grad.data(), d);
            gb += r;
        }
        const double step = cfg.logreg_lr / static_cast<double>(n);
        kern.axpy(-step, grad.data(), m.weights.data(), d);
        m.bias -= step * gb;
    }
}

void fit_sgd_hinge(ClassifierModel& m, const Matrix& x, const std::vector<bool>& pos, const ClassifierConfig& cfg,
                   std::uint64_t seed) {
    const std::size_t n = x.rows(), d = x.cols();
    m.weights.assign(d, 0.0);
    m.bias = 0.0;
    Rng rng(derive_seed(seed, 0x736764));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    const auto& kern = simd::kernels();
    for (std::size_t epoch = 0; epoch < cfg.sgd_epochs; ++epoch) {
        rng.shuffle(order);
        for (auto i : order) {
            const double y = pos[i] ? 1.0 : -1.0;
            const double z = kern.dot(m.weights.data(), x.row(i).data(), d) + m.bias;
            if (y * z >= 1.0) continue;
            kern.axpy(cfg.sgd_lr * y, x.row(i).data(), m.weights.data(), d);
            m.bias += cfg.sgd_lr * y;
        }
    }
}

}  // namespace

ClassifierModel fit_classifier(ClassifierKind kind, const Matrix& x, const std::vector<std::string>& y,
                               const std::string& positive_label, const ClassifierConfig& cfg, std::uint64_t seed) {
    if (x.rows() != y.size()) throw Error(ErrorKind::length_mismatch, "fit: feature rows and labels differ");
    if (kind == ClassifierKind::knn && cfg.k < 1) throw Error(ErrorKind::config, "knn: k must be >= 1");
    if (cfg.logreg_lr <= 0 || cfg.sgd_lr <= 0) throw Error(ErrorKind::config, "fit: learning rate must be > 0");

    ClassifierModel m;
    m.kind = kind;
    m.positive_label = positive_label;
    std::vector<bool> pos(y.size());
    std::size_t n_pos = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        pos[i] = y[i] == positive_label;
        if (pos[i]) {
            ++n_pos;
        } else if (m.negative_label.empty()) {
            m.negative_label = y[i];
        } else if (y[i] != m.negative_label) {
            throw Error(ErrorKind::non_binary, "fit: more than two labels");
        }
    }
    if (n_pos == 0 || n_pos == y.size())
        throw Error(ErrorKind::single_class, "fit: training labels contain a single class");

    switch (kind) {
        case ClassifierKind::knn:
            m.train_x = x;
            m.train_positive = std::move(pos);
            m.k = std::min(cfg.k, x.rows());
            break;
        case ClassifierKind::logreg: fit_logreg(m, x, pos, cfg); break;
        case ClassifierKind::sgd_hinge: fit_sgd_hinge(m, x, pos, cfg, seed); break;
    }
    return m;
}

std::vector<double> score(const ClassifierModel& model, const Matrix& x) {
    const std::size_t d = model.kind == ClassifierKind::knn ? model.train_x.cols() : model.weights.size();
    if (x.cols() != d && x.rows() > 0) throw Error(ErrorKind::shape, "score: column count does not match the model");
    std::vector<double> out(x.rows());
    if (model.kind == ClassifierKind::knn) {
        NeighborQuery q(model.train_x);
        for (std::size_t i = 0; i < x.rows(); ++i) {
            std::size_t hits = 0;
            for (const auto& nb : q.nearest(x.row(i), model.k)) hits += model.train_positive[nb.id];
            out[i] = static_cast<double>(hits) / static_cast<double>(model.k);
        }
        return out;
    }
    const auto& kern = simd::kernels();
    for (std::size_t i = 0; i < x.rows(); ++i) out[i] = kern.dot(model.weights.data(), x.row(i).data(), d) + model.bias;
    return out;
}

std::vector<std::string> predict(const ClassifierModel& model, const Matrix& x) {
    const auto s = score(model, x);
    std::vector<std::string> out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        out[i] = s[i] > model.decision_threshold() ? model.positive_label : model.negative_label;
    return out;
}

}  // namespace nusample
